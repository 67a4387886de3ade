#pragma once

#include <cstdint>
#include <string>

#include "navgen/floorplan.hpp"
#include "navgen/graph_build.hpp"
#include "navgen/objects.hpp"
#include "navgen/sampling.hpp"
#include "navgen/speaker.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

// Every tunable of the generation and evaluation pipeline in one place.
// Serialized as `key = value` lines; the digest is the FNV-1a hash of the
// canonical serialization, so identical configs share a digest on every
// platform.
struct PipelineConfig {
  std::uint64_t seed = 1;
  int scene_count = 20;

  // Environment generation.
  double resolution = 0.1;
  double clearance_radius = 0.2;
  double bounds_width = 14.0;
  double bounds_height = 12.0;
  int room_count_min = 4;
  int room_count_max = 8;
  double corridor_width_min = 0.8;
  double corridor_width_max = 1.2;
  double obstacle_density = 0.16;

  // Viewpoint sampling and graph construction.
  double sample_separation = 0.4;
  double sample_budget_factor = 50.0;
  double cluster_threshold = 1.0;
  double edge_max_length = 5.0;
  int max_degree = 5;

  // Trajectory enumeration.
  int r2r_min_intermediate = 3;
  int r2r_max_intermediate = 5;
  long long per_scene_cap = 50000;
  int object_count = 12;
  double object_max_anchor_distance = 3.0;
  int object_min_edges = 4;
  int object_max_edges = 9;
  long long per_object_cap = 200;

  // Speaker.
  double straight_band_deg = 30.0;
  double around_band_deg = 135.0;

  // Evaluation.
  double success_radius = 3.0;

  // Dataset assembly.
  double ratio_unseen = 0.2;
  double ratio_val_seen = 0.05;
  long long shard_size = 25000;    // episodes per shard file
  long long episode_window = 4096; // bounded episode buffer
  int workers = 0;                 // 0 = hardware concurrency
  long long extrapolation_scenes = 1291;

  void validate() const;
  std::string serialize() const;
  static PipelineConfig parse(const std::string &text);
  static PipelineConfig load(const std::string &path);
  std::string digest() const;

  FloorplanSpec floorplan_spec(const std::string &scene_id,
                               std::uint64_t scene_seed) const;
  SamplingParams sampling_params() const;
  GraphBuildParams graph_params() const;
  R2REnumerationParams r2r_params() const;
  ObjectParams object_params() const;
  ObjectPathParams object_path_params() const;
  SpeakerParams speaker_params() const;
};

}  // namespace navgen
