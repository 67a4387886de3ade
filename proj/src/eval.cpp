#include "navgen/eval.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "navgen/errors.hpp"
#include "navgen/grid_search.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

double dtw_cost(const std::vector<std::vector<double>> &pairwise) {
  const std::size_t n = pairwise.size();
  if (n == 0 || pairwise.front().empty()) {
    throw DataError("dtw: empty sequence");
  }
  const std::size_t m = pairwise.front().size();
  std::vector<double> prev(m), cur(m);
  prev[0] = pairwise[0][0];
  for (std::size_t j = 1; j < m; ++j) {
    prev[j] = prev[j - 1] + pairwise[0][j];
  }
  for (std::size_t i = 1; i < n; ++i) {
    cur[0] = prev[0] + pairwise[i][0];
    for (std::size_t j = 1; j < m; ++j) {
      cur[j] = pairwise[i][j] + std::min({prev[j], prev[j - 1], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

namespace {

double field_distance(const DistanceField &field, const OccupancyGrid &grid,
                      const Point2D &p, const char *what) {
  if (!grid.in_bounds(p)) {
    throw DataError(ErrorCode::kOutOfBounds,
                    std::string("evaluate: ") + what + " outside grid bounds");
  }
  const CellIndex c = grid.cell_of(p);
  if (!grid.is_free(c.col, c.row)) {
    throw DataError(ErrorCode::kOnObstacle,
                    std::string("evaluate: ") + what + " on an obstacle cell");
  }
  const double d = field.at(c);
  if (d == kUnreachable) {
    throw DataError(std::string("evaluate: unreachable geodesic for ") + what +
                    " (corrupt episode)");
  }
  return d;
}

}  // namespace

EvalResult evaluate_run(const Episode &episode, const AgentRun &run,
                        const OccupancyGrid &grid, const NavGraph &graph,
                        double success_radius) {
  if (run.visited.empty()) {
    throw DataError("evaluate: run has no positions");
  }
  if (episode.trajectory.node_ids.empty()) {
    throw DataError("evaluate: episode has an empty trajectory");
  }
  if (!(success_radius > 0.0)) {
    throw ConfigError("evaluate: success radius must be positive");
  }
  const std::vector<int> &gt = episode.trajectory.node_ids;
  const Point2D goal = graph.position(gt.back());
  const Point2D start = graph.position(gt.front());

  const DistanceField goal_field =
      geodesic_field(grid, {grid.cell_of(goal)}, {});

  EvalResult r;
  for (std::size_t i = 1; i < run.visited.size(); ++i) {
    r.tl += euclidean(run.visited[i - 1], run.visited[i]);
  }
  r.ne = field_distance(goal_field, grid, run.visited.back(), "stop position");
  r.shortest_dist =
      field_distance(goal_field, grid, start, "start position");
  r.sr = r.ne <= success_radius ? 1.0 : 0.0;
  r.osr = 0.0;
  for (const Point2D &p : run.visited) {
    if (field_distance(goal_field, grid, p, "visited position") <=
        success_radius) {
      r.osr = 1.0;
      break;
    }
  }
  const double denom = std::max(r.tl, r.shortest_dist);
  r.spl = denom > 0.0 ? r.sr * r.shortest_dist / denom : r.sr;
  r.gp = r.shortest_dist - r.ne;

  // DTW under the geodesic point distance: one field per ground-truth node.
  std::vector<std::vector<double>> cost(
      run.visited.size(), std::vector<double>(gt.size(), 0.0));
  for (std::size_t j = 0; j < gt.size(); ++j) {
    const DistanceField field =
        geodesic_field(grid, {grid.cell_of(graph.position(gt[j]))}, {});
    for (std::size_t i = 0; i < run.visited.size(); ++i) {
      cost[i][j] = field_distance(field, grid, run.visited[i],
                                  "visited position");
    }
  }
  const double dtw = dtw_cost(cost);
  r.ndtw = std::exp(-dtw / (static_cast<double>(gt.size()) * success_radius));

  if (episode.trajectory.target_object.has_value()) {
    const bool grounded = run.selected_object.has_value() &&
                          *run.selected_object ==
                              *episode.trajectory.target_object;
    r.rgs = r.sr * (grounded ? 1.0 : 0.0);
    r.rgspl = denom > 0.0 ? *r.rgs * r.shortest_dist / denom : *r.rgs;
  }
  return r;
}

AgentRun oracle_follower(const Episode &episode, const NavGraph &graph) {
  AgentRun run;
  run.episode_id = hex16(episode.episode_id);
  run.visited.reserve(episode.trajectory.node_ids.size());
  for (int id : episode.trajectory.node_ids) {
    run.visited.push_back(graph.position(id));
  }
  run.selected_object = episode.trajectory.target_object;
  return run;
}

AgentRun noisy_follower(const Episode &episode, const NavGraph &graph,
                        double p_wrong, std::uint64_t seed) {
  if (!(p_wrong >= 0.0 && p_wrong <= 1.0)) {
    throw ConfigError("noisy follower: p_wrong must lie in [0, 1]");
  }
  const std::vector<int> &gt = episode.trajectory.node_ids;
  const int goal = gt.back();
  SeededRng rng(derive_seed(seed, "noisy-follower", episode.episode_id));

  AgentRun run;
  run.episode_id = hex16(episode.episode_id);
  int cur = gt.front();
  run.visited.push_back(graph.position(cur));
  std::deque<int> plan(gt.begin() + 1, gt.end());
  const std::size_t max_steps = 3 * gt.size();
  std::size_t steps = 0;
  while (cur != goal && steps < max_steps) {
    ++steps;
    if (rng.uniform_real() < p_wrong) {
      const auto &nbrs = graph.neighbors(cur);
      if (!nbrs.empty()) {
        cur = nbrs[static_cast<std::size_t>(
                       rng.uniform_u64(0, nbrs.size() - 1))]
                  .first;
        run.visited.push_back(graph.position(cur));
        const std::vector<double> dist = distances_to(graph, goal);
        auto replanned = canonical_path(graph, cur, goal, dist);
        if (!replanned) {
          break;  // diverted into a disconnected part; forced stop
        }
        plan.assign(replanned->begin() + 1, replanned->end());
        continue;
      }
    }
    if (plan.empty()) {
      break;
    }
    cur = plan.front();
    plan.pop_front();
    run.visited.push_back(graph.position(cur));
  }
  run.selected_object = episode.trajectory.target_object;
  return run;
}

EvalResult aggregate(std::span<const EvalResult> results) {
  if (results.empty()) {
    throw DataError("aggregate: empty result set");
  }
  EvalResult mean;
  double rgs_sum = 0.0;
  double rgspl_sum = 0.0;
  std::size_t rgs_count = 0;
  for (const EvalResult &r : results) {
    mean.tl += r.tl;
    mean.ne += r.ne;
    mean.osr += r.osr;
    mean.sr += r.sr;
    mean.spl += r.spl;
    mean.ndtw += r.ndtw;
    mean.gp += r.gp;
    mean.shortest_dist += r.shortest_dist;
    if (r.rgs.has_value()) {
      rgs_sum += *r.rgs;
      rgspl_sum += r.rgspl.value_or(0.0);
      ++rgs_count;
    }
  }
  const double n = static_cast<double>(results.size());
  mean.tl /= n;
  mean.ne /= n;
  mean.osr /= n;
  mean.sr /= n;
  mean.spl /= n;
  mean.ndtw /= n;
  mean.gp /= n;
  mean.shortest_dist /= n;
  if (rgs_count > 0) {
    mean.rgs = rgs_sum / static_cast<double>(rgs_count);
    mean.rgspl = rgspl_sum / static_cast<double>(rgs_count);
  }
  return mean;
}

}  // namespace navgen
