#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "navgen/bleu.hpp"
#include "navgen/clustering.hpp"
#include "navgen/errors.hpp"
#include "navgen/eval.hpp"
#include "navgen/floorplan.hpp"
#include "navgen/graph_build.hpp"
#include "navgen/objects.hpp"
#include "navgen/pipeline.hpp"
#include "navgen/rng.hpp"
#include "navgen/sampling.hpp"
#include "navgen/shard.hpp"
#include "navgen/speaker.hpp"
#include "navgen/stats.hpp"
#include "navgen/svg_render.hpp"
#include "navgen/textio.hpp"
#include "navgen/trajectory.hpp"

namespace fs = std::filesystem;
using namespace navgen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitPartial = 4;

PipelineConfig load_config(const std::string &config_path,
                           std::optional<std::uint64_t> seed_override) {
  PipelineConfig config = config_path.empty() ? PipelineConfig()
                                              : PipelineConfig::load(config_path);
  if (seed_override.has_value()) {
    config.seed = *seed_override;
  }
  config.validate();
  return config;
}

std::string scene_label(int index) {
  std::string num = format_int(index + 1);
  while (num.size() < 4) {
    num.insert(num.begin(), '0');
  }
  return "scene-" + num;
}

// ---- trajectory listing format (sample-traj -> gen-instr) ----

std::string serialize_trajs(const std::string &scene_id,
                            const std::vector<ObjectAnnotation> &objects,
                            const std::vector<Trajectory> &trajectories) {
  std::string out = "trajs v1\n";
  out += "scene " + scene_id + "\n";
  out += "objects " + format_int(static_cast<long long>(objects.size())) + "\n";
  for (const ObjectAnnotation &obj : objects) {
    out += "object " + format_int(obj.object_id) + " " + obj.label + " " +
           format_double(obj.position.x) + " " + format_double(obj.position.y) +
           " " + format_int(obj.anchor_viewpoint) + " " +
           format_double(obj.anchor_distance) + " " +
           (obj.eligible ? "1" : "0") + "\n";
  }
  out += "trajectories " +
         format_int(static_cast<long long>(trajectories.size())) + "\n";
  for (const Trajectory &traj : trajectories) {
    out += "traj ";
    out += traj.style == TrajectoryStyle::kR2R ? "r2r" : "reverie";
    out += " ";
    out += traj.target_object ? format_int(*traj.target_object) : "-";
    out += " " + format_double(traj.length) + " ";
    for (std::size_t i = 0; i < traj.node_ids.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += format_int(traj.node_ids[i]);
    }
    out += "\n";
  }
  return out;
}

void parse_trajs(const std::string &text, std::string *scene_id,
                 std::vector<ObjectAnnotation> *objects,
                 std::vector<Trajectory> *trajectories) {
  const auto lines = split_char(text, '\n');
  std::size_t i = 0;
  auto next_line = [&]() -> std::string_view {
    if (i >= lines.size()) {
      throw DataError(ErrorCode::kTruncated, "trajs file: unexpected end");
    }
    return lines[i++];
  };
  if (next_line() != "trajs v1") {
    throw DataError(ErrorCode::kVersionMismatch,
                    "trajs file: expected 'trajs v1' header");
  }
  const auto scene_parts = split_ws(next_line());
  if (scene_parts.size() != 2 || scene_parts[0] != "scene") {
    throw DataError("trajs file: malformed scene line");
  }
  *scene_id = std::string(scene_parts[1]);
  const auto obj_header = split_ws(next_line());
  if (obj_header.size() != 2 || obj_header[0] != "objects") {
    throw DataError("trajs file: malformed objects line");
  }
  const long long object_count = parse_int(obj_header[1], "object count");
  for (long long k = 0; k < object_count; ++k) {
    const auto parts = split_ws(next_line());
    if (parts.size() != 8 || parts[0] != "object") {
      throw DataError("trajs file: malformed object line");
    }
    ObjectAnnotation obj;
    obj.object_id = static_cast<int>(parse_int(parts[1], "object id"));
    obj.label = std::string(parts[2]);
    obj.position.x = parse_double(parts[3], "object x");
    obj.position.y = parse_double(parts[4], "object y");
    obj.anchor_viewpoint = static_cast<int>(parse_int(parts[5], "anchor"));
    obj.anchor_distance = parse_double(parts[6], "anchor distance");
    obj.eligible = parts[7] == "1";
    objects->push_back(std::move(obj));
  }
  const auto traj_header = split_ws(next_line());
  if (traj_header.size() != 2 || traj_header[0] != "trajectories") {
    throw DataError("trajs file: malformed trajectories line");
  }
  const long long traj_count = parse_int(traj_header[1], "trajectory count");
  for (long long k = 0; k < traj_count; ++k) {
    const auto parts = split_ws(next_line());
    if (parts.size() != 5 || parts[0] != "traj") {
      throw DataError("trajs file: malformed traj line");
    }
    Trajectory traj;
    traj.scene_id = *scene_id;
    if (parts[1] == "r2r") {
      traj.style = TrajectoryStyle::kR2R;
    } else if (parts[1] == "reverie") {
      traj.style = TrajectoryStyle::kReverie;
    } else {
      throw DataError("trajs file: unknown style");
    }
    if (parts[2] != "-") {
      traj.target_object = static_cast<int>(parse_int(parts[2], "object"));
    }
    traj.length = parse_double(parts[3], "length");
    for (const auto id_text : split_char(parts[4], ',')) {
      traj.node_ids.push_back(static_cast<int>(parse_int(id_text, "node id")));
    }
    trajectories->push_back(std::move(traj));
  }
}

// ---- runs file (evaluate) ----

std::vector<AgentRun> parse_runs(const std::string &text) {
  const auto lines = split_char(text, '\n');
  if (lines.empty() || lines[0] != "runs v1") {
    throw DataError(ErrorCode::kVersionMismatch,
                    "runs file: expected 'runs v1' header");
  }
  std::vector<AgentRun> runs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto parts = split_ws(lines[i]);
    if (parts.empty()) {
      continue;
    }
    if (parts[0] != "run" || parts.size() < 3) {
      throw DataError("runs file: malformed line " +
                      format_int(static_cast<long long>(i + 1)));
    }
    AgentRun run;
    run.episode_id = std::string(parts[1]);
    std::size_t k = 2;
    for (; k < parts.size(); ++k) {
      if (parts[k] == "object") {
        if (k + 1 >= parts.size()) {
          throw DataError("runs file: dangling object tag");
        }
        run.selected_object =
            static_cast<int>(parse_int(parts[k + 1], "object id"));
        k += 2;
        break;
      }
      const auto coords = split_char(parts[k], ',');
      if (coords.size() != 2) {
        throw DataError("runs file: positions must be x,y");
      }
      run.visited.push_back(Point2D{parse_double(coords[0], "x"),
                                    parse_double(coords[1], "y")});
    }
    if (k < parts.size()) {
      throw DataError("runs file: trailing tokens on line " +
                      format_int(static_cast<long long>(i + 1)));
    }
    if (run.visited.empty()) {
      throw DataError("runs file: run without positions");
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

std::string format_metric_fields(const EvalResult &r) {
  std::string out;
  out += " TL " + format_double(r.tl);
  out += " NE " + format_double(r.ne);
  out += " OSR " + format_double(r.osr);
  out += " SR " + format_double(r.sr);
  out += " SPL " + format_double(r.spl);
  out += " nDTW " + format_double(r.ndtw);
  out += " GP " + format_double(r.gp);
  if (r.rgs.has_value()) {
    out += " RGS " + format_double(*r.rgs);
    out += " RGSPL " + format_double(r.rgspl.value_or(0.0));
  }
  return out;
}

std::vector<std::string> list_shards(const std::string &dir) {
  std::vector<std::string> out;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".shard") {
      out.push_back(entry.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> read_token_lines(const std::string &path) {
  std::vector<std::vector<std::string>> out;
  for (const auto line : split_char(read_text_file(path), '\n')) {
    const auto parts = split_ws(line);
    if (parts.empty()) {
      continue;
    }
    std::vector<std::string> tokens;
    tokens.reserve(parts.size());
    for (const auto part : parts) {
      tokens.emplace_back(part);
    }
    out.push_back(std::move(tokens));
  }
  return out;
}

struct SceneData {
  OccupancyGrid grid;
  NavGraph graph;
};

SceneData load_scene(const std::string &data_dir, const std::string &scene_id) {
  const fs::path root(data_dir);
  return SceneData{
      OccupancyGrid::parse(
          read_text_file((root / "scenes" / (scene_id + ".grid")).string())),
      NavGraph::parse(
          read_text_file((root / "graphs" / (scene_id + ".graph")).string()))};
}

int run_cli(int argc, char **argv) {
  CLI::App app{"synthetic navigation-graph and instruction dataset toolkit"};
  app.require_subcommand(1);
  

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  app.add_option("--config", config_path, "pipeline config file (key = value)")
      ->expected(1);
  app.add_option("--seed", seed_override, "override the pipeline seed");

  // gen-env
  auto *gen_env = app.add_subcommand("gen-env", "generate occupancy grids");
  gen_env->fallthrough();
  std::string gen_env_out = "out";
  int gen_env_count = 0;
  gen_env->add_option("--out", gen_env_out, "output directory");
  gen_env->add_option("--scenes", gen_env_count,
                      "number of scenes (default: config scene_count)");

  // build-graph
  auto *build_cmd = app.add_subcommand("build-graph",
                                       "sample viewpoints and build the graph");
  build_cmd->fallthrough();
  std::string build_grid, build_out = "out";
  build_cmd->add_option("--grid", build_grid, "occupancy grid file")->required();
  build_cmd->add_option("--out", build_out, "output directory");

  // sample-traj
  auto *traj_cmd = app.add_subcommand("sample-traj", "enumerate trajectories");
  traj_cmd->fallthrough();
  std::string traj_grid, traj_graph, traj_out = "trajectories.trajs";
  traj_cmd->add_option("--grid", traj_grid, "occupancy grid file")->required();
  traj_cmd->add_option("--graph", traj_graph, "navigation graph file")->required();
  traj_cmd->add_option("--out", traj_out, "output trajectory listing");

  // gen-instr
  auto *instr_cmd = app.add_subcommand("gen-instr",
                                       "pair trajectories with instructions");
  instr_cmd->fallthrough();
  std::string instr_grid, instr_graph, instr_trajs, instr_out = "episodes.shard";
  instr_cmd->add_option("--grid", instr_grid, "occupancy grid file")->required();
  instr_cmd->add_option("--graph", instr_graph, "navigation graph file")->required();
  instr_cmd->add_option("--trajs", instr_trajs, "trajectory listing")->required();
  instr_cmd->add_option("--out", instr_out, "output shard file");

  // evaluate
  auto *eval_cmd = app.add_subcommand("evaluate", "score agent runs");
  eval_cmd->fallthrough();
  std::string eval_data, eval_shard, eval_runs, eval_out;
  eval_cmd->add_option("--data", eval_data,
                       "pipeline output directory with scenes/ and graphs/")
      ->required();
  eval_cmd->add_option("--shard", eval_shard, "episode shard file")->required();
  eval_cmd->add_option("--runs", eval_runs, "agent runs file")->required();
  eval_cmd->add_option("--out", eval_out, "write results here (default stdout)");

  // stats
  auto *stats_cmd = app.add_subcommand("stats", "dataset statistics report");
  stats_cmd->fallthrough();
  std::vector<std::string> stats_shards;
  std::string stats_data, stats_out;
  stats_cmd->add_option("--shard", stats_shards, "shard file(s)");
  stats_cmd->add_option("--data", stats_data,
                        "pipeline output directory (reads shards/ and graphs/)");
  stats_cmd->add_option("--out", stats_out, "write report here (default stdout)");

  // render
  auto *render_cmd = app.add_subcommand("render", "render a scene to SVG");
  render_cmd->fallthrough();
  std::string render_grid, render_graph, render_shard, render_out = "scene.svg";
  int render_max_traj = 0;
  render_cmd->add_option("--grid", render_grid, "occupancy grid file")->required();
  render_cmd->add_option("--graph", render_graph, "navigation graph file");
  render_cmd->add_option("--shard", render_shard,
                         "overlay trajectories from this shard");
  render_cmd->add_option("--max-traj", render_max_traj,
                         "how many trajectories to overlay");
  render_cmd->add_option("--out", render_out, "output SVG file");

  // run
  auto *run_cmd = app.add_subcommand("run", "full generation pipeline");
  run_cmd->fallthrough();
  std::string run_out = "out";
  std::string run_scenes_dir;
  run_cmd->add_option("--out", run_out, "output directory");
  run_cmd->add_option("--scenes-dir", run_scenes_dir,
                      "use pre-built grids from this directory");

  // bleu
  auto *bleu_cmd = app.add_subcommand("bleu", "corpus BLEU-4 for text files");
  bleu_cmd->fallthrough();
  std::string bleu_candidates;
  std::vector<std::string> bleu_references;
  bleu_cmd->add_option("--candidates", bleu_candidates,
                       "candidate file, one tokenized sentence per line")
      ->required();
  bleu_cmd
      ->add_option("--references", bleu_references,
                   "reference file(s), line-aligned with the candidates")
      ->required();

  CLI11_PARSE(app, argc, argv);

  const PipelineConfig config = load_config(config_path, seed_override);

  if (gen_env->parsed()) {
    const int count = gen_env_count > 0 ? gen_env_count : config.scene_count;
    fs::create_directories(gen_env_out);
    for (int i = 0; i < count; ++i) {
      const std::uint64_t scene_seed =
          derive_seed(config.seed, "scene", static_cast<std::uint64_t>(i));
      const OccupancyGrid grid = generate_floorplan(
          config.floorplan_spec(scene_label(i), scene_seed));
      const fs::path path =
          fs::path(gen_env_out) / (grid.scene_id() + ".grid");
      write_text_file(path.string(), grid.serialize());
      std::cout << grid.scene_id() << " navigable_area "
                << format_double(grid.navigable_area()) << " -> "
                << path.string() << "\n";
    }
    return kExitOk;
  }

  if (build_cmd->parsed()) {
    const OccupancyGrid grid = OccupancyGrid::parse(read_text_file(build_grid));
    const std::uint64_t scene_seed = derive_seed(config.seed, "scene", 0);
    const auto samples = sample_navigable_points(
        grid, config.sampling_params(), derive_seed(scene_seed, "sampling"));
    if (samples.empty()) {
      throw DataError("no navigable viewpoints could be sampled");
    }
    const auto viewpoints =
        cluster_viewpoints(samples, grid, config.cluster_threshold);
    const NavGraph rough =
        build_rough_graph(viewpoints, grid, config.graph_params(),
                          derive_seed(scene_seed, "rough-graph"));
    const NavGraph graph = refine_graph(rough, grid, config.graph_params());
    const GraphQualityReport report =
        quality_report(graph, grid, config.graph_params());
    fs::create_directories(build_out);
    const fs::path graph_path =
        fs::path(build_out) / (grid.scene_id() + ".graph");
    write_text_file(graph_path.string(), graph.serialize());
    write_text_file(
        (fs::path(build_out) / (grid.scene_id() + ".quality")).string(),
        report.serialize());
    std::cout << GraphQualityReport::table_header() << "\n"
              << report.table_row() << "\n";
    return kExitOk;
  }

  if (traj_cmd->parsed()) {
    const OccupancyGrid grid = OccupancyGrid::parse(read_text_file(traj_grid));
    const NavGraph graph = NavGraph::parse(read_text_file(traj_graph));
    const std::uint64_t scene_seed = derive_seed(config.seed, "scene", 0);
    auto trajectories = enumerate_r2r_paths(
        graph, config.r2r_params(), derive_seed(scene_seed, "r2r-cap"));
    const auto objects =
        place_objects(grid, graph, config.object_params(),
                      derive_seed(scene_seed, "objects"));
    auto object_paths =
        enumerate_object_paths(graph, objects, config.object_path_params(),
                               derive_seed(scene_seed, "object-cap"));
    std::cout << "r2r " << trajectories.size() << " object_paths "
              << object_paths.size() << "\n";
    for (auto &traj : object_paths) {
      trajectories.push_back(std::move(traj));
    }
    write_text_file(traj_out,
                    serialize_trajs(grid.scene_id(), objects, trajectories));
    return kExitOk;
  }

  if (instr_cmd->parsed()) {
    const OccupancyGrid grid = OccupancyGrid::parse(read_text_file(instr_grid));
    const NavGraph graph = NavGraph::parse(read_text_file(instr_graph));
    std::string scene_id;
    std::vector<ObjectAnnotation> objects;
    std::vector<Trajectory> trajectories;
    parse_trajs(read_text_file(instr_trajs), &scene_id, &objects,
                &trajectories);
    if (scene_id != grid.scene_id()) {
      throw DataError("trajs scene does not match grid scene");
    }
    const std::uint64_t scene_seed = derive_seed(config.seed, "scene", 0);
    std::vector<Episode> episodes;
    episodes.reserve(trajectories.size());
    for (Trajectory &traj : trajectories) {
      const std::uint64_t episode_seed =
          traj.style == TrajectoryStyle::kR2R
              ? derive_seed(scene_seed, "r2r-episodes")
              : derive_seed(scene_seed, "object-episodes",
                            static_cast<std::uint64_t>(*traj.target_object));
      InstructionRecord instruction =
          generate_instruction(grid, graph, traj, objects, episode_seed,
                               config.speaker_params());
      episodes.push_back(make_episode(std::move(traj), std::move(instruction),
                                      Split::kTrain, episode_seed));
    }
    write_shard(instr_out, episodes, config.digest(), config.seed);
    std::cout << "episodes " << episodes.size() << " -> " << instr_out << "\n";
    return kExitOk;
  }

  if (eval_cmd->parsed()) {
    const auto episodes = read_shard(eval_shard);
    std::map<std::string, const Episode *> by_id;
    for (const Episode &e : episodes) {
      by_id[hex16(e.episode_id)] = &e;
    }
    const auto runs = parse_runs(read_text_file(eval_runs));
    std::map<std::string, SceneData> scenes;
    std::string out = "evalresults v1\n";
    out += "columns TL NE OSR SR SPL nDTW GP\n";
    std::vector<EvalResult> results;
    for (const AgentRun &run : runs) {
      const auto it = by_id.find(run.episode_id);
      if (it == by_id.end()) {
        throw DataError("runs file references unknown episode " +
                        run.episode_id);
      }
      const Episode &episode = *it->second;
      auto scene_it = scenes.find(episode.trajectory.scene_id);
      if (scene_it == scenes.end()) {
        scene_it = scenes
                       .emplace(episode.trajectory.scene_id,
                                load_scene(eval_data,
                                           episode.trajectory.scene_id))
                       .first;
      }
      const EvalResult r =
          evaluate_run(episode, run, scene_it->second.grid,
                       scene_it->second.graph, config.success_radius);
      results.push_back(r);
      out += "episode " + run.episode_id + format_metric_fields(r) + "\n";
    }
    if (results.empty()) {
      throw DataError("runs file contains no runs");
    }
    const EvalResult mean = aggregate(results);
    out += "aggregate count " +
           format_int(static_cast<long long>(results.size())) +
           format_metric_fields(mean) + "\n";
    if (eval_out.empty()) {
      std::cout << out;
    } else {
      write_text_file(eval_out, out);
      std::cout << "aggregate" << format_metric_fields(mean) << "\n";
    }
    return kExitOk;
  }

  if (stats_cmd->parsed()) {
    std::vector<std::string> shard_files = stats_shards;
    std::vector<GraphQualityReport> quality;
    if (!stats_data.empty()) {
      const auto found = list_shards((fs::path(stats_data) / "shards").string());
      shard_files.insert(shard_files.end(), found.begin(), found.end());
    }
    if (shard_files.empty()) {
      throw DataError("stats: no shard files given");
    }
    std::vector<Episode> episodes;
    for (const std::string &path : shard_files) {
      auto part = read_shard(path);
      for (auto &e : part) {
        episodes.push_back(std::move(e));
      }
    }
    const std::string report = render_stats_report(dataset_stats(episodes), quality);
    if (stats_out.empty()) {
      std::cout << report;
    } else {
      write_text_file(stats_out, report);
    }
    return kExitOk;
  }

  if (render_cmd->parsed()) {
    const OccupancyGrid grid = OccupancyGrid::parse(read_text_file(render_grid));
    std::optional<NavGraph> graph;
    if (!render_graph.empty()) {
      graph = NavGraph::parse(read_text_file(render_graph));
    }
    std::vector<Trajectory> trajectories;
    if (!render_shard.empty() && render_max_traj > 0) {
      for (const Episode &e : read_shard(render_shard)) {
        if (e.trajectory.scene_id == grid.scene_id()) {
          trajectories.push_back(e.trajectory);
          if (static_cast<int>(trajectories.size()) >= render_max_traj) {
            break;
          }
        }
      }
    }
    render_svg_file(render_out, grid, graph ? &*graph : nullptr, trajectories);
    std::cout << "rendered " << render_out << "\n";
    return kExitOk;
  }

  if (run_cmd->parsed()) {
    std::optional<std::vector<std::string>> grid_files;
    if (!run_scenes_dir.empty()) {
      std::vector<std::string> files;
      for (const auto &entry : fs::directory_iterator(run_scenes_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".grid") {
          files.push_back(entry.path().string());
        }
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) {
        throw DataError("no .grid files under " + run_scenes_dir);
      }
      grid_files = std::move(files);
    }
    const Manifest manifest = pipeline_run(config, run_out, grid_files);
    std::cout << "scenes " << manifest.scenes.size() << " failed "
              << manifest.failed_scenes() << " episodes "
              << manifest.episodes_total << " shards " << manifest.shard_count
              << "\n";
    std::cout << GraphQualityReport::table_header() << "\n";
    for (const SceneOutcome &scene : manifest.scenes) {
      if (scene.ok) {
        std::cout << scene.quality.table_row() << "\n";
      }
    }
    return manifest.failed_scenes() > 0 ? kExitPartial : kExitOk;
  }

  if (bleu_cmd->parsed()) {
    const auto candidates = read_token_lines(bleu_candidates);
    std::vector<std::vector<std::vector<std::string>>> references;
    for (const std::string &path : bleu_references) {
      auto ref_lines = read_token_lines(path);
      if (ref_lines.size() != candidates.size()) {
        throw DataError("bleu: reference file " + path +
                        " is not line-aligned with the candidates");
      }
      references.push_back(std::move(ref_lines));
    }
    BleuAccumulator acc;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      std::vector<std::vector<std::string>> refs;
      refs.reserve(references.size());
      for (const auto &ref_file : references) {
        refs.push_back(ref_file[i]);
      }
      acc.add(candidates[i], refs);
    }
    const BleuScore score = acc.finalize();
    std::cout << "bleu4 " << format_double(score.value) << "\n";
    std::cout << "precisions " << format_double(score.precisions[0]) << " "
              << format_double(score.precisions[1]) << " "
              << format_double(score.precisions[2]) << " "
              << format_double(score.precisions[3]) << "\n";
    std::cout << "brevity_penalty " << format_double(score.brevity_penalty)
              << "\n";
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error &e) {
    std::cerr << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
