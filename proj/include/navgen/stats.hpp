#pragma once

#include <map>
#include <string>
#include <vector>

#include "navgen/episode.hpp"
#include "navgen/graph_build.hpp"

namespace navgen {

struct DatasetStats {
  std::size_t episode_count = 0;
  std::size_t r2r_count = 0;
  std::size_t reverie_count = 0;
  std::map<Split, std::size_t> per_split;
  std::map<int, std::size_t> node_count_histogram;
  std::map<std::string, std::size_t> per_scene;
  double min_length = 0.0;
  double max_length = 0.0;
  double mean_length = 0.0;
  double mean_r2r_length = 0.0;
  double mean_instruction_tokens = 0.0;
};

DatasetStats dataset_stats(const std::vector<Episode> &episodes);

// Text report; includes the public R2R reference row (22k instructions,
// 32 words, 7 nodes, 10 m) for calibration context and optional per-scene
// graph-quality aggregates.
std::string render_stats_report(const DatasetStats &stats,
                                const std::vector<GraphQualityReport> &quality = {});

}  // namespace navgen
