#include "navgen/stats.hpp"

#include <algorithm>

#include "navgen/textio.hpp"

namespace navgen {

DatasetStats dataset_stats(const std::vector<Episode> &episodes) {
  DatasetStats stats;
  stats.episode_count = episodes.size();
  double length_sum = 0.0;
  double r2r_length_sum = 0.0;
  double token_sum = 0.0;
  bool first = true;
  for (const Episode &e : episodes) {
    const Trajectory &traj = e.trajectory;
    if (traj.style == TrajectoryStyle::kR2R) {
      ++stats.r2r_count;
      r2r_length_sum += traj.length;
    } else {
      ++stats.reverie_count;
    }
    ++stats.per_split[e.split];
    ++stats.node_count_histogram[static_cast<int>(traj.node_ids.size())];
    ++stats.per_scene[traj.scene_id];
    length_sum += traj.length;
    token_sum += static_cast<double>(e.instruction.tokens.size());
    if (first) {
      stats.min_length = traj.length;
      stats.max_length = traj.length;
      first = false;
    } else {
      stats.min_length = std::min(stats.min_length, traj.length);
      stats.max_length = std::max(stats.max_length, traj.length);
    }
  }
  if (stats.episode_count > 0) {
    stats.mean_length = length_sum / static_cast<double>(stats.episode_count);
    stats.mean_instruction_tokens =
        token_sum / static_cast<double>(stats.episode_count);
  }
  if (stats.r2r_count > 0) {
    stats.mean_r2r_length =
        r2r_length_sum / static_cast<double>(stats.r2r_count);
  }
  return stats;
}

std::string render_stats_report(const DatasetStats &stats,
                                const std::vector<GraphQualityReport> &quality) {
  std::string out;
  out += "stats v1\n";
  out += "episodes " + format_int(static_cast<long long>(stats.episode_count)) + "\n";
  out += "r2r " + format_int(static_cast<long long>(stats.r2r_count)) + "\n";
  out += "reverie " + format_int(static_cast<long long>(stats.reverie_count)) + "\n";
  for (const auto &[split, count] : stats.per_split) {
    out += std::string("split ") + split_name(split) + " " +
           format_int(static_cast<long long>(count)) + "\n";
  }
  for (const auto &[nodes, count] : stats.node_count_histogram) {
    out += "node_hist " + format_int(nodes) + " " +
           format_int(static_cast<long long>(count)) + "\n";
  }
  for (const auto &[scene, count] : stats.per_scene) {
    out += "scene_yield " + scene + " " +
           format_int(static_cast<long long>(count)) + "\n";
  }
  out += "length_min " + format_double(stats.min_length) + "\n";
  out += "length_max " + format_double(stats.max_length) + "\n";
  out += "length_mean " + format_double(stats.mean_length) + "\n";
  out += "r2r_length_mean " + format_double(stats.mean_r2r_length) + "\n";
  out += "instruction_tokens_mean " +
         format_double(stats.mean_instruction_tokens) + "\n";
  // Public R2R figures, for eyeballing how the synthetic data compares.
  out += "reference r2r 22000_instructions 32_words 7_nodes 10_m\n";

  if (!quality.empty()) {
    double density = 0.0;
    double collision = 0.0;
    double mean_edge = 0.0;
    double mean_degree = 0.0;
    for (const GraphQualityReport &q : quality) {
      density += q.density;
      collision += q.collision_ratio;
      mean_edge += q.mean_edge_length;
      mean_degree += q.mean_degree;
    }
    const double n = static_cast<double>(quality.size());
    out += "graph_density_mean " + format_double(density / n) + "\n";
    out += "graph_collision_mean " + format_double(collision / n) + "\n";
    out += "graph_edge_length_mean " + format_double(mean_edge / n) + "\n";
    out += "graph_degree_mean " + format_double(mean_degree / n) + "\n";
  }
  return out;
}

}  // namespace navgen
