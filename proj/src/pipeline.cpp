#include "navgen/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <thread>

#include "navgen/clustering.hpp"
#include "navgen/errors.hpp"
#include "navgen/floorplan.hpp"
#include "navgen/objects.hpp"
#include "navgen/rng.hpp"
#include "navgen/sampling.hpp"
#include "navgen/shard.hpp"
#include "navgen/speaker.hpp"
#include "navgen/textio.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

namespace fs = std::filesystem;

namespace {

std::string scene_name(int index) {
  std::string num = format_int(index + 1);
  while (num.size() < 4) {
    num.insert(num.begin(), '0');
  }
  return "scene-" + num;
}

std::string sanitize(std::string message) {
  for (char &c : message) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      c = '_';
    }
  }
  return message;
}

// Streams serialized episode lines through a temp body file so a shard of
// any size never holds its episodes in memory; the final file is assembled
// header + body + checksum.
class ShardWriter {
public:
  ShardWriter(fs::path dir, std::string split_tag, std::string config_digest,
              std::uint64_t seed, long long shard_size)
      : dir_(std::move(dir)),
        split_tag_(std::move(split_tag)),
        config_digest_(std::move(config_digest)),
        seed_(seed),
        shard_size_(shard_size) {}

  void add(const Episode &episode) {
    if (!body_.is_open()) {
      open_body();
    }
    body_ << serialize_episode_line(episode) << '\n';
    if (!body_.good()) {
      throw DataError("shard writer: body write failed for " +
                      body_path_.string());
    }
    scenes_.insert(episode.trajectory.scene_id);
    ++count_;
    if (count_ >= shard_size_) {
      close_shard();
    }
  }

  void finish() {
    if (body_.is_open()) {
      close_shard();
    }
  }

  std::size_t shards_written() const { return static_cast<std::size_t>(index_); }

private:
  void open_body() {
    fs::create_directories(dir_);
    body_path_ = dir_ / (split_tag_ + ".body.tmp");
    body_.open(body_path_, std::ios::binary | std::ios::trunc);
    if (!body_.is_open()) {
      throw DataError("shard writer: cannot open " + body_path_.string());
    }
    scenes_.clear();
    count_ = 0;
  }

  void close_shard() {
    body_.close();
    std::string header = "shard v1\n";
    header += "config_digest " + config_digest_ + "\n";
    header += "seed " + format_int(static_cast<long long>(seed_)) + "\n";
    header += "scenes";
    for (const std::string &scene : scenes_) {
      header += ' ';
      header += scene;
    }
    header += "\ncount " + format_int(count_) + "\n";

    std::string num = format_int(index_);
    while (num.size() < 5) {
      num.insert(num.begin(), '0');
    }
    const fs::path out_path = dir_ / (split_tag_ + "-" + num + ".shard");
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out.is_open()) {
      throw DataError("shard writer: cannot open " + out_path.string());
    }
    std::uint64_t hash = fnv1a64(header);
    out << header;
    std::ifstream body(body_path_, std::ios::binary);
    std::vector<char> chunk(1 << 20);
    while (body) {
      body.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
      const std::streamsize got = body.gcount();
      if (got > 0) {
        hash = fnv1a64(std::string_view(chunk.data(),
                                        static_cast<std::size_t>(got)),
                       hash);
        out.write(chunk.data(), got);
      }
    }
    out << "checksum " << hex16(hash) << '\n';
    if (!out.good()) {
      throw DataError("shard writer: write failed for " + out_path.string());
    }
    out.close();
    body.close();
    fs::remove(body_path_);
    ++index_;
  }

  fs::path dir_;
  std::string split_tag_;
  std::string config_digest_;
  std::uint64_t seed_;
  long long shard_size_;
  fs::path body_path_;
  std::ofstream body_;
  std::set<std::string> scenes_;
  long long count_ = 0;
  int index_ = 0;
};

struct SceneBundle {
  int index = 0;
  std::string scene_id;
  bool ok = false;
  std::string error;
  std::optional<OccupancyGrid> grid;
  std::optional<NavGraph> graph;
  GraphQualityReport quality;
  std::size_t sample_count = 0;
  std::vector<Trajectory> r2r;
  std::vector<ObjectAnnotation> objects;
  std::vector<Trajectory> object_paths;
  double elapsed_ms = 0.0;
};

SceneBundle build_scene(const PipelineConfig &config, int index,
                        const std::optional<std::string> &grid_file) {
  SceneBundle bundle;
  bundle.index = index;
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::uint64_t scene_seed =
        derive_seed(config.seed, "scene", static_cast<std::uint64_t>(index));
    OccupancyGrid grid =
        grid_file.has_value()
            ? OccupancyGrid::parse(read_text_file(*grid_file))
            : generate_floorplan(
                  config.floorplan_spec(scene_name(index), scene_seed));
    bundle.scene_id = grid.scene_id();

    const std::vector<Point2D> samples = sample_navigable_points(
        grid, config.sampling_params(), derive_seed(scene_seed, "sampling"));
    if (samples.empty()) {
      throw DataError("no navigable viewpoints could be sampled");
    }
    bundle.sample_count = samples.size();

    const std::vector<Viewpoint> viewpoints =
        cluster_viewpoints(samples, grid, config.cluster_threshold);
    const NavGraph rough =
        build_rough_graph(viewpoints, grid, config.graph_params(),
                          derive_seed(scene_seed, "rough-graph"));
    NavGraph graph = refine_graph(rough, grid, config.graph_params());
    bundle.quality = quality_report(graph, grid, config.graph_params());

    bundle.r2r = enumerate_r2r_paths(graph, config.r2r_params(),
                                     derive_seed(scene_seed, "r2r-cap"));
    bundle.objects = place_objects(grid, graph, config.object_params(),
                                   derive_seed(scene_seed, "objects"));
    bundle.object_paths =
        enumerate_object_paths(graph, bundle.objects,
                               config.object_path_params(),
                               derive_seed(scene_seed, "object-cap"));
    bundle.grid = std::move(grid);
    bundle.graph = std::move(graph);
    bundle.ok = true;
  } catch (const std::exception &e) {
    if (bundle.scene_id.empty()) {
      bundle.scene_id = scene_name(index);
    }
    bundle.error = e.what();
  }
  bundle.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return bundle;
}

}  // namespace

EpisodeBuffer::EpisodeBuffer(std::size_t window,
                             std::function<void(std::vector<Episode> &&)> sink)
    : window_(window == 0 ? 1 : window), sink_(std::move(sink)) {
  pending_.reserve(window_);
}

void EpisodeBuffer::push(Episode episode) {
  pending_.push_back(std::move(episode));
  peak_ = std::max(peak_, pending_.size());
  if (pending_.size() >= window_) {
    flush();
  }
}

void EpisodeBuffer::flush() {
  if (pending_.empty()) {
    return;
  }
  std::vector<Episode> batch;
  batch.swap(pending_);
  pending_.reserve(window_);
  sink_(std::move(batch));
}

std::size_t Manifest::failed_scenes() const {
  std::size_t failed = 0;
  for (const SceneOutcome &s : scenes) {
    failed += s.ok ? 0 : 1;
  }
  return failed;
}

std::string Manifest::serialize() const {
  std::string out = "manifest v1\n";
  out += "config_digest " + config_digest + "\n";
  out += "seed " + format_int(static_cast<long long>(seed)) + "\n";
  out += "scene_count " + format_int(static_cast<long long>(scenes.size())) + "\n";
  for (const SceneOutcome &s : scenes) {
    if (!s.ok) {
      out += "scene " + s.scene_id + " failed " + sanitize(s.error) + "\n";
      continue;
    }
    out += "scene " + s.scene_id + " ok";
    out += " nodes " + format_int(s.quality.node_count);
    out += " edges " + format_int(s.quality.edge_count);
    out += " components " + format_int(s.quality.component_count);
    out += " density " + format_double(s.quality.density);
    out += " collision " + format_double(s.quality.collision_ratio);
    out += " mean_edge " + format_double(s.quality.mean_edge_length);
    out += " mean_degree " + format_double(s.quality.mean_degree);
    out += " navigable_area " + format_double(s.quality.navigable_area);
    out += " samples " + format_int(static_cast<long long>(s.sample_count));
    out += " r2r " + format_int(static_cast<long long>(s.r2r_count));
    out += " object_paths " +
           format_int(static_cast<long long>(s.object_path_count));
    out += " episodes " + format_int(static_cast<long long>(s.episode_count));
    out += "\n";
  }
  out += "totals scenes_ok " +
         format_int(static_cast<long long>(scenes.size() - failed_scenes()));
  out += " scenes_failed " + format_int(static_cast<long long>(failed_scenes()));
  out += " episodes " + format_int(static_cast<long long>(episodes_total));
  out += " r2r " + format_int(static_cast<long long>(r2r_total));
  out += " object_paths " + format_int(static_cast<long long>(object_path_total));
  out += " train " + format_int(static_cast<long long>(train_total));
  out += " val_seen " + format_int(static_cast<long long>(val_seen_total));
  out += " val_unseen " + format_int(static_cast<long long>(val_unseen_total));
  out += "\n";
  out += "shards " + format_int(static_cast<long long>(shard_count)) + "\n";
  out += "buffer_peak " + format_int(static_cast<long long>(buffer_peak)) + "\n";
  const std::size_t ok_count = scenes.size() - failed_scenes();
  const double per_scene =
      ok_count > 0 ? static_cast<double>(episodes_total) /
                         static_cast<double>(ok_count)
                   : 0.0;
  out += "episodes_per_scene " + format_double(per_scene) + "\n";
  // Linear extrapolation of the per-scene yield to a larger scene pool.
  out += "extrapolation scenes " + format_int(extrapolation_scenes) +
         " episodes " +
         format_int(std::llround(per_scene *
                                 static_cast<double>(extrapolation_scenes))) +
         "\n";
  for (const SceneOutcome &s : scenes) {
    if (s.ok) {
      out += "timing scene " + s.scene_id + " ms " +
             format_double(s.elapsed_ms) + "\n";
    }
  }
  out += "timing total_ms " + format_double(total_ms) + "\n";
  return out;
}

Manifest pipeline_run(const PipelineConfig &config, const std::string &out_dir,
                      const std::optional<std::vector<std::string>>
                          &scene_grid_files) {
  config.validate();
  const auto wall_start = std::chrono::steady_clock::now();
  const fs::path root(out_dir);
  fs::create_directories(root / "scenes");
  fs::create_directories(root / "graphs");
  fs::create_directories(root / "shards");

  const int scene_count =
      scene_grid_files.has_value()
          ? static_cast<int>(scene_grid_files->size())
          : config.scene_count;
  if (scene_count < 1) {
    throw ConfigError("pipeline: no scenes to process");
  }

  Manifest manifest;
  manifest.config_digest = config.digest();
  manifest.seed = config.seed;
  manifest.extrapolation_scenes = config.extrapolation_scenes;

  // Scene-level split comes first so every episode can be routed on the fly.
  std::vector<std::string> scene_ids;
  scene_ids.reserve(static_cast<std::size_t>(scene_count));
  for (int i = 0; i < scene_count; ++i) {
    scene_ids.push_back(scene_name(i));
  }
  std::set<std::string> unseen_set;
  if (scene_count >= 2) {
    auto [train_scenes, unseen_scenes] =
        split_scenes(scene_ids, config.ratio_unseen,
                     derive_seed(config.seed, "split"));
    unseen_set.insert(unseen_scenes.begin(), unseen_scenes.end());
  }

  ShardWriter train_writer(root / "shards", "train", manifest.config_digest,
                           config.seed, config.shard_size);
  ShardWriter val_seen_writer(root / "shards", "val_seen",
                              manifest.config_digest, config.seed,
                              config.shard_size);
  ShardWriter val_unseen_writer(root / "shards", "val_unseen",
                                manifest.config_digest, config.seed,
                                config.shard_size);

  std::set<std::uint64_t> seen_ids;
  EpisodeBuffer buffer(
      static_cast<std::size_t>(config.episode_window),
      [&](std::vector<Episode> &&batch) {
        for (Episode &episode : batch) {
          if (!seen_ids.insert(episode.episode_id).second) {
            throw DataError("pipeline: episode id collision " +
                            hex16(episode.episode_id));
          }
          switch (episode.split) {
            case Split::kTrain:
              ++manifest.train_total;
              train_writer.add(episode);
              break;
            case Split::kValSeen:
              ++manifest.val_seen_total;
              val_seen_writer.add(episode);
              break;
            case Split::kValUnseen:
              ++manifest.val_unseen_total;
              val_unseen_writer.add(episode);
              break;
          }
        }
      });

  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      config.workers > 0 ? static_cast<std::size_t>(config.workers)
                         : std::max(1u, hw == 0 ? 1u : hw);

  std::deque<std::future<SceneBundle>> in_flight;
  int next_scene = 0;
  auto launch_more = [&]() {
    while (next_scene < scene_count && in_flight.size() < workers) {
      std::optional<std::string> grid_file;
      if (scene_grid_files.has_value()) {
        grid_file = (*scene_grid_files)[static_cast<std::size_t>(next_scene)];
      }
      const int index = next_scene++;
      in_flight.push_back(std::async(std::launch::async, build_scene, config,
                                     index, grid_file));
    }
  };

  launch_more();
  while (!in_flight.empty()) {
    SceneBundle bundle = in_flight.front().get();
    in_flight.pop_front();
    launch_more();

    SceneOutcome outcome;
    outcome.scene_id = bundle.scene_id;
    outcome.ok = bundle.ok;
    outcome.error = bundle.error;
    outcome.elapsed_ms = bundle.elapsed_ms;
    const std::uint64_t scene_seed = derive_seed(
        config.seed, "scene", static_cast<std::uint64_t>(bundle.index));
    if (bundle.ok) {
      outcome.quality = bundle.quality;
      outcome.sample_count = bundle.sample_count;
      outcome.r2r_count = bundle.r2r.size();
      outcome.object_path_count = bundle.object_paths.size();

      write_text_file((root / "scenes" / (bundle.scene_id + ".grid")).string(),
                      bundle.grid->serialize());
      write_text_file((root / "graphs" / (bundle.scene_id + ".graph")).string(),
                      bundle.graph->serialize());
      write_text_file((root / "graphs" / (bundle.scene_id + ".quality")).string(),
                      bundle.quality.serialize());

      const bool unseen = unseen_set.count(bundle.scene_id) > 0;
      auto route_split = [&](std::uint64_t episode_id) {
        if (unseen) {
          return Split::kValUnseen;
        }
        return training_scene_split(episode_id, config.ratio_val_seen);
      };

      const std::uint64_t r2r_seed = derive_seed(scene_seed, "r2r-episodes");
      for (Trajectory &traj : bundle.r2r) {
        InstructionRecord instruction = generate_instruction(
            *bundle.grid, *bundle.graph, traj, bundle.objects, r2r_seed,
            config.speaker_params());
        Episode episode = make_episode(std::move(traj),
                                       std::move(instruction), Split::kTrain,
                                       r2r_seed);
        episode.split = route_split(episode.episode_id);
        buffer.push(std::move(episode));
        ++outcome.episode_count;
      }
      bundle.r2r.clear();
      for (Trajectory &traj : bundle.object_paths) {
        const std::uint64_t object_seed =
            derive_seed(scene_seed, "object-episodes",
                        static_cast<std::uint64_t>(*traj.target_object));
        InstructionRecord instruction = generate_instruction(
            *bundle.grid, *bundle.graph, traj, bundle.objects, object_seed,
            config.speaker_params());
        Episode episode = make_episode(std::move(traj),
                                       std::move(instruction), Split::kTrain,
                                       object_seed);
        episode.split = route_split(episode.episode_id);
        buffer.push(std::move(episode));
        ++outcome.episode_count;
      }
      bundle.object_paths.clear();

      manifest.episodes_total += outcome.episode_count;
      manifest.r2r_total += outcome.r2r_count;
      manifest.object_path_total += outcome.object_path_count;
    }
    manifest.scenes.push_back(std::move(outcome));
  }

  buffer.flush();
  train_writer.finish();
  val_seen_writer.finish();
  val_unseen_writer.finish();
  manifest.shard_count = train_writer.shards_written() +
                         val_seen_writer.shards_written() +
                         val_unseen_writer.shards_written();
  manifest.buffer_peak = buffer.peak();
  manifest.total_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - wall_start)
                          .count();

  // The extrapolation target gets the per-scene yield scaled linearly.
  std::string text = manifest.serialize();
  write_text_file((root / "manifest.txt").string(), text);
  return manifest;
}

}  // namespace navgen
