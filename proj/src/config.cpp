#include "navgen/config.hpp"

#include <functional>
#include <map>

#include "navgen/errors.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"

namespace navgen {

namespace {

struct Field {
  std::function<std::string(const PipelineConfig &)> get;
  std::function<void(PipelineConfig &, std::string_view)> set;
};

// Key order fixed here defines the canonical serialization.
const std::vector<std::pair<std::string, Field>> &field_table() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> t;
    auto add_u64 = [&](const std::string &key, std::uint64_t PipelineConfig::*member) {
      t.push_back({key,
                   {[member](const PipelineConfig &c) {
                      return format_int(static_cast<long long>(c.*member));
                    },
                    [member, key](PipelineConfig &c, std::string_view v) {
                      c.*member = static_cast<std::uint64_t>(parse_int(v, key));
                    }}});
    };
    auto add_int = [&](const std::string &key, int PipelineConfig::*member) {
      t.push_back({key,
                   {[member](const PipelineConfig &c) {
                      return format_int(c.*member);
                    },
                    [member, key](PipelineConfig &c, std::string_view v) {
                      c.*member = static_cast<int>(parse_int(v, key));
                    }}});
    };
    auto add_ll = [&](const std::string &key, long long PipelineConfig::*member) {
      t.push_back({key,
                   {[member](const PipelineConfig &c) {
                      return format_int(c.*member);
                    },
                    [member, key](PipelineConfig &c, std::string_view v) {
                      c.*member = parse_int(v, key);
                    }}});
    };
    auto add_dbl = [&](const std::string &key, double PipelineConfig::*member) {
      t.push_back({key,
                   {[member](const PipelineConfig &c) {
                      return format_double(c.*member);
                    },
                    [member, key](PipelineConfig &c, std::string_view v) {
                      c.*member = parse_double(v, key);
                    }}});
    };

    add_u64("seed", &PipelineConfig::seed);
    add_int("scene_count", &PipelineConfig::scene_count);
    add_dbl("resolution", &PipelineConfig::resolution);
    add_dbl("clearance_radius", &PipelineConfig::clearance_radius);
    add_dbl("bounds_width", &PipelineConfig::bounds_width);
    add_dbl("bounds_height", &PipelineConfig::bounds_height);
    add_int("room_count_min", &PipelineConfig::room_count_min);
    add_int("room_count_max", &PipelineConfig::room_count_max);
    add_dbl("corridor_width_min", &PipelineConfig::corridor_width_min);
    add_dbl("corridor_width_max", &PipelineConfig::corridor_width_max);
    add_dbl("obstacle_density", &PipelineConfig::obstacle_density);
    add_dbl("sample_separation", &PipelineConfig::sample_separation);
    add_dbl("sample_budget_factor", &PipelineConfig::sample_budget_factor);
    add_dbl("cluster_threshold", &PipelineConfig::cluster_threshold);
    add_dbl("edge_max_length", &PipelineConfig::edge_max_length);
    add_int("max_degree", &PipelineConfig::max_degree);
    add_int("r2r_min_intermediate", &PipelineConfig::r2r_min_intermediate);
    add_int("r2r_max_intermediate", &PipelineConfig::r2r_max_intermediate);
    add_ll("per_scene_cap", &PipelineConfig::per_scene_cap);
    add_int("object_count", &PipelineConfig::object_count);
    add_dbl("object_max_anchor_distance",
            &PipelineConfig::object_max_anchor_distance);
    add_int("object_min_edges", &PipelineConfig::object_min_edges);
    add_int("object_max_edges", &PipelineConfig::object_max_edges);
    add_ll("per_object_cap", &PipelineConfig::per_object_cap);
    add_dbl("straight_band_deg", &PipelineConfig::straight_band_deg);
    add_dbl("around_band_deg", &PipelineConfig::around_band_deg);
    add_dbl("success_radius", &PipelineConfig::success_radius);
    add_dbl("ratio_unseen", &PipelineConfig::ratio_unseen);
    add_dbl("ratio_val_seen", &PipelineConfig::ratio_val_seen);
    add_ll("shard_size", &PipelineConfig::shard_size);
    add_ll("episode_window", &PipelineConfig::episode_window);
    add_int("workers", &PipelineConfig::workers);
    add_ll("extrapolation_scenes", &PipelineConfig::extrapolation_scenes);
    return t;
  }();
  return table;
}

void check(bool ok, const std::string &message) {
  if (!ok) {
    throw ConfigError("config: " + message);
  }
}

}  // namespace

void PipelineConfig::validate() const {
  check(scene_count >= 1 && scene_count <= 100000,
        "scene_count must be in [1, 100000]");
  check(resolution >= 0.02 && resolution <= 0.5,
        "resolution must be in [0.02, 0.5]");
  check(clearance_radius >= 0.0 && clearance_radius <= 0.4,
        "clearance_radius must be in [0, 0.4]");
  check(bounds_width >= 3.0 && bounds_width <= 200.0 &&
            bounds_height >= 3.0 && bounds_height <= 200.0,
        "bounds must be in [3, 200] meters");
  check(room_count_min >= 1 && room_count_min <= room_count_max &&
            room_count_max <= 64,
        "room counts must satisfy 1 <= min <= max <= 64");
  check(corridor_width_min >= 2.0 * clearance_radius,
        "corridor_width_min must be at least twice the clearance radius");
  check(corridor_width_min <= corridor_width_max,
        "corridor width range inverted");
  check(obstacle_density >= 0.0 && obstacle_density <= 0.45,
        "obstacle_density must be in [0, 0.45]");
  check(sample_separation > 0.0 && sample_separation <= 10.0,
        "sample_separation must be in (0, 10]");
  check(sample_budget_factor >= 1.0 && sample_budget_factor <= 1000.0,
        "sample_budget_factor must be in [1, 1000]");
  check(cluster_threshold > 0.0 && cluster_threshold <= 20.0,
        "cluster_threshold must be in (0, 20]");
  check(edge_max_length > 0.0 && edge_max_length <= 100.0,
        "edge_max_length must be in (0, 100]");
  check(max_degree >= 1 && max_degree <= 64, "max_degree must be in [1, 64]");
  check(r2r_min_intermediate >= 0 &&
            r2r_min_intermediate <= r2r_max_intermediate &&
            r2r_max_intermediate <= 64,
        "intermediate-node bounds must satisfy 0 <= min <= max <= 64");
  check(object_count >= 0 && object_count <= 100000,
        "object_count must be in [0, 100000]");
  check(object_max_anchor_distance > 0.0 && object_max_anchor_distance <= 100.0,
        "object_max_anchor_distance must be in (0, 100]");
  check(object_min_edges >= 1 && object_min_edges <= object_max_edges &&
            object_max_edges <= 64,
        "object path edge bounds must satisfy 1 <= min <= max <= 64");
  check(straight_band_deg >= 0.0 && straight_band_deg <= 90.0,
        "straight_band_deg must be in [0, 90]");
  check(around_band_deg > straight_band_deg && around_band_deg <= 180.0,
        "around_band_deg must be in (straight_band_deg, 180]");
  check(success_radius > 0.0 && success_radius <= 100.0,
        "success_radius must be in (0, 100]");
  check(ratio_unseen > 0.0 && ratio_unseen < 1.0,
        "ratio_unseen must be in (0, 1)");
  check(ratio_val_seen >= 0.0 && ratio_val_seen < 1.0,
        "ratio_val_seen must be in [0, 1)");
  check(shard_size >= 1, "shard_size must be positive");
  check(episode_window >= 1, "episode_window must be positive");
  check(workers >= 0 && workers <= 1024, "workers must be in [0, 1024]");
  check(extrapolation_scenes >= 1, "extrapolation_scenes must be positive");
}

std::string PipelineConfig::serialize() const {
  std::string out;
  for (const auto &[key, field] : field_table()) {
    out += key + " = " + field.get(*this) + "\n";
  }
  return out;
}

PipelineConfig PipelineConfig::parse(const std::string &text) {
  PipelineConfig config;
  std::map<std::string_view, const Field *> by_key;
  for (const auto &[key, field] : field_table()) {
    by_key[key] = &field;
  }
  const auto lines = split_char(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto parts = split_ws(line);
    if (parts.empty()) {
      continue;
    }
    if (parts.size() != 3 || parts[1] != "=") {
      throw ConfigError("config line " + format_int(static_cast<long long>(i + 1)) +
                        ": expected 'key = value'");
    }
    const auto it = by_key.find(parts[0]);
    if (it == by_key.end()) {
      throw ConfigError("config line " + format_int(static_cast<long long>(i + 1)) +
                        ": unknown key '" + std::string(parts[0]) + "'");
    }
    try {
      it->second->set(config, parts[2]);
    } catch (const DataError &e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  config.validate();
  return config;
}

PipelineConfig PipelineConfig::load(const std::string &path) {
  try {
    return parse(read_text_file(path));
  } catch (const DataError &e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

std::string PipelineConfig::digest() const { return hex16(fnv1a64(serialize())); }

FloorplanSpec PipelineConfig::floorplan_spec(const std::string &scene_id,
                                             std::uint64_t scene_seed) const {
  FloorplanSpec spec;
  spec.scene_id = scene_id;
  spec.bounds_width = bounds_width;
  spec.bounds_height = bounds_height;
  spec.room_count_min = room_count_min;
  spec.room_count_max = room_count_max;
  spec.corridor_width_min = corridor_width_min;
  spec.corridor_width_max = corridor_width_max;
  spec.obstacle_density = obstacle_density;
  spec.resolution = resolution;
  spec.clearance_radius = clearance_radius;
  spec.seed = scene_seed;
  return spec;
}

SamplingParams PipelineConfig::sampling_params() const {
  SamplingParams params;
  params.min_geodesic_separation = sample_separation;
  params.clearance_radius = clearance_radius;
  params.budget_factor = sample_budget_factor;
  return params;
}

GraphBuildParams PipelineConfig::graph_params() const {
  GraphBuildParams params;
  params.max_edge_length = edge_max_length;
  params.max_degree = max_degree;
  params.clearance_radius = clearance_radius;
  return params;
}

R2REnumerationParams PipelineConfig::r2r_params() const {
  R2REnumerationParams params;
  params.min_intermediate = r2r_min_intermediate;
  params.max_intermediate = r2r_max_intermediate;
  params.per_scene_cap = per_scene_cap;
  return params;
}

ObjectParams PipelineConfig::object_params() const {
  ObjectParams params;
  params.count = object_count;
  params.max_anchor_distance = object_max_anchor_distance;
  return params;
}

ObjectPathParams PipelineConfig::object_path_params() const {
  ObjectPathParams params;
  params.min_edges = object_min_edges;
  params.max_edges = object_max_edges;
  params.per_object_cap = per_object_cap;
  return params;
}

SpeakerParams PipelineConfig::speaker_params() const {
  SpeakerParams params;
  params.straight_band_deg = straight_band_deg;
  params.around_band_deg = around_band_deg;
  return params;
}

}  // namespace navgen
