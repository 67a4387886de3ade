#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "navgen/config.hpp"
#include "navgen/episode.hpp"
#include "navgen/graph_build.hpp"

namespace navgen {

struct SceneOutcome {
  std::string scene_id;
  bool ok = false;
  std::string error;
  GraphQualityReport quality;
  std::size_t sample_count = 0;
  std::size_t r2r_count = 0;
  std::size_t object_path_count = 0;
  std::size_t episode_count = 0;
  double elapsed_ms = 0.0;
};

struct Manifest {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<SceneOutcome> scenes;
  std::size_t episodes_total = 0;
  std::size_t r2r_total = 0;
  std::size_t object_path_total = 0;
  std::size_t train_total = 0;
  std::size_t val_seen_total = 0;
  std::size_t val_unseen_total = 0;
  std::size_t shard_count = 0;
  std::size_t buffer_peak = 0;  // episodes resident at once, max
  long long extrapolation_scenes = 1291;
  double total_ms = 0.0;

  std::size_t failed_scenes() const;
  // Timing lines are emitted last, prefixed "timing", so byte comparisons
  // can exclude them.
  std::string serialize() const;
};

// Streams episode batches into rolling per-split shard files without holding
// more than `window` episodes at once; tracks the peak occupancy.
class EpisodeBuffer {
public:
  EpisodeBuffer(std::size_t window, std::function<void(std::vector<Episode> &&)> sink);
  void push(Episode episode);
  void flush();
  std::size_t peak() const { return peak_; }

private:
  std::size_t window_;
  std::function<void(std::vector<Episode> &&)> sink_;
  std::vector<Episode> pending_;
  std::size_t peak_ = 0;
};

// Full generation pipeline: environments, graphs, trajectories, instructions
// and shards under `out_dir` (scenes/, graphs/, shards/, manifest.txt).
// When `scene_grid_files` is given those grids are loaded instead of
// generated (scene ids come from the files). Per-scene failures are isolated
// and recorded in the manifest.
Manifest pipeline_run(const PipelineConfig &config, const std::string &out_dir,
                      const std::optional<std::vector<std::string>>
                          &scene_grid_files = std::nullopt);

}  // namespace navgen
