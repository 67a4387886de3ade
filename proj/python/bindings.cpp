#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "navgen/bleu.hpp"
#include "navgen/clustering.hpp"
#include "navgen/errors.hpp"
#include "navgen/eval.hpp"
#include "navgen/floorplan.hpp"
#include "navgen/graph_build.hpp"
#include "navgen/grid_search.hpp"
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

namespace py = pybind11;
using namespace navgen;

namespace {

std::vector<Point2D> to_points(const std::vector<std::pair<double, double>> &xs) {
  std::vector<Point2D> out;
  out.reserve(xs.size());
  for (const auto &[x, y] : xs) {
    out.push_back(Point2D{x, y});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "synthetic navigation-graph and instruction dataset toolkit";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DataError>(m, "DataError");

  py::class_<Point2D>(m, "Point2D")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point2D::x)
      .def_readwrite("y", &Point2D::y)
      .def("__repr__", [](const Point2D &p) {
        return "Point2D(" + format_double(p.x) + ", " + format_double(p.y) + ")";
      });

  py::class_<OccupancyGrid>(m, "OccupancyGrid")
      .def_property_readonly("scene_id", &OccupancyGrid::scene_id)
      .def_property_readonly("width", &OccupancyGrid::width)
      .def_property_readonly("height", &OccupancyGrid::height)
      .def_property_readonly("resolution", &OccupancyGrid::resolution)
      .def("navigable_area", &OccupancyGrid::navigable_area)
      .def("is_free", py::overload_cast<int, int>(&OccupancyGrid::is_free,
                                                  py::const_))
      .def("serialize", &OccupancyGrid::serialize)
      .def_static("parse", &OccupancyGrid::parse);

  py::class_<FloorplanSpec>(m, "FloorplanSpec")
      .def(py::init<>())
      .def_readwrite("scene_id", &FloorplanSpec::scene_id)
      .def_readwrite("bounds_width", &FloorplanSpec::bounds_width)
      .def_readwrite("bounds_height", &FloorplanSpec::bounds_height)
      .def_readwrite("room_count_min", &FloorplanSpec::room_count_min)
      .def_readwrite("room_count_max", &FloorplanSpec::room_count_max)
      .def_readwrite("corridor_width_min", &FloorplanSpec::corridor_width_min)
      .def_readwrite("corridor_width_max", &FloorplanSpec::corridor_width_max)
      .def_readwrite("obstacle_density", &FloorplanSpec::obstacle_density)
      .def_readwrite("resolution", &FloorplanSpec::resolution)
      .def_readwrite("clearance_radius", &FloorplanSpec::clearance_radius)
      .def_readwrite("seed", &FloorplanSpec::seed);

  m.def("generate_floorplan", &generate_floorplan, py::arg("spec"));
  m.def("navigable_area",
        [](const OccupancyGrid &grid) { return grid.navigable_area(); });
  m.def(
      "geodesic_distance",
      [](const OccupancyGrid &grid, double ax, double ay, double bx, double by,
         double clearance) -> std::optional<double> {
        return geodesic_distance(grid, Point2D{ax, ay}, Point2D{bx, by},
                                 clearance);
      },
      py::arg("grid"), py::arg("ax"), py::arg("ay"), py::arg("bx"),
      py::arg("by"), py::arg("clearance") = 0.2,
      "Geodesic distance in meters, or None when unreachable.");
  m.def(
      "line_traversable",
      [](const OccupancyGrid &grid, double ax, double ay, double bx, double by,
         double clearance) {
        return line_traversable(grid, Point2D{ax, ay}, Point2D{bx, by},
                                clearance);
      },
      py::arg("grid"), py::arg("ax"), py::arg("ay"), py::arg("bx"),
      py::arg("by"), py::arg("clearance") = 0.2);
  m.def(
      "sample_navigable_points",
      [](const OccupancyGrid &grid, double separation, double clearance,
         std::uint64_t seed) {
        SamplingParams params;
        params.min_geodesic_separation = separation;
        params.clearance_radius = clearance;
        return sample_navigable_points(grid, params, seed);
      },
      py::arg("grid"), py::arg("separation") = 0.4, py::arg("clearance") = 0.2,
      py::arg("seed") = 1);

  py::class_<Viewpoint>(m, "Viewpoint")
      .def_readonly("id", &Viewpoint::id)
      .def_readonly("position", &Viewpoint::position)
      .def_readonly("cluster_size", &Viewpoint::cluster_size);

  py::enum_<EdgeOrigin>(m, "EdgeOrigin")
      .value("ROUGH", EdgeOrigin::kRough)
      .value("REFINEMENT", EdgeOrigin::kRefinement);

  py::class_<NavEdge>(m, "NavEdge")
      .def_readonly("a", &NavEdge::a)
      .def_readonly("b", &NavEdge::b)
      .def_readonly("length", &NavEdge::length)
      .def_readonly("origin", &NavEdge::origin);

  py::class_<NavGraph>(m, "NavGraph")
      .def_property_readonly("scene_id", &NavGraph::scene_id)
      .def_property_readonly("node_count", &NavGraph::node_count)
      .def_property_readonly("edge_count", &NavGraph::edge_count)
      .def("viewpoints", &NavGraph::viewpoints)
      .def("edges", &NavGraph::edges)
      .def("component_count", &NavGraph::component_count)
      .def("serialize", &NavGraph::serialize)
      .def_static("parse", &NavGraph::parse);

  m.def(
      "cluster_viewpoints",
      [](const std::vector<std::pair<double, double>> &points,
         const OccupancyGrid &grid, double threshold) {
        return cluster_viewpoints(to_points(points), grid, threshold);
      },
      py::arg("points"), py::arg("grid"), py::arg("threshold") = 1.0);
  m.def(
      "build_rough_graph",
      [](const std::vector<Viewpoint> &viewpoints, const OccupancyGrid &grid,
         double max_edge, int max_degree, double clearance,
         std::uint64_t seed) {
        GraphBuildParams params;
        params.max_edge_length = max_edge;
        params.max_degree = max_degree;
        params.clearance_radius = clearance;
        return build_rough_graph(viewpoints, grid, params, seed);
      },
      py::arg("viewpoints"), py::arg("grid"), py::arg("max_edge") = 5.0,
      py::arg("max_degree") = 5, py::arg("clearance") = 0.2,
      py::arg("seed") = 1);
  m.def(
      "refine_graph",
      [](const NavGraph &rough, const OccupancyGrid &grid, double max_edge,
         double clearance) {
        GraphBuildParams params;
        params.max_edge_length = max_edge;
        params.clearance_radius = clearance;
        return refine_graph(rough, grid, params);
      },
      py::arg("graph"), py::arg("grid"), py::arg("max_edge") = 5.0,
      py::arg("clearance") = 0.2);

  py::class_<GraphQualityReport>(m, "GraphQualityReport")
      .def_readonly("scene_id", &GraphQualityReport::scene_id)
      .def_readonly("navigable_area", &GraphQualityReport::navigable_area)
      .def_readonly("density", &GraphQualityReport::density)
      .def_readonly("collision_ratio", &GraphQualityReport::collision_ratio)
      .def_readonly("mean_edge_length", &GraphQualityReport::mean_edge_length)
      .def_readonly("mean_degree", &GraphQualityReport::mean_degree)
      .def_readonly("component_count", &GraphQualityReport::component_count)
      .def_readonly("node_count", &GraphQualityReport::node_count)
      .def_readonly("edge_count", &GraphQualityReport::edge_count)
      .def("serialize", &GraphQualityReport::serialize);

  m.def(
      "quality_report",
      [](const NavGraph &graph, const OccupancyGrid &grid, double clearance) {
        GraphBuildParams params;
        params.clearance_radius = clearance;
        return quality_report(graph, grid, params);
      },
      py::arg("graph"), py::arg("grid"), py::arg("clearance") = 0.2);

  py::enum_<TrajectoryStyle>(m, "TrajectoryStyle")
      .value("R2R", TrajectoryStyle::kR2R)
      .value("REVERIE", TrajectoryStyle::kReverie);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("scene_id", &Trajectory::scene_id)
      .def_readonly("node_ids", &Trajectory::node_ids)
      .def_readonly("length", &Trajectory::length)
      .def_readonly("style", &Trajectory::style)
      .def_readonly("target_object", &Trajectory::target_object);

  m.def(
      "shortest_path",
      [](const NavGraph &graph, int src, int dst) {
        return shortest_path(graph, src, dst);
      },
      py::arg("graph"), py::arg("src"), py::arg("dst"));
  m.def(
      "enumerate_r2r_paths",
      [](const NavGraph &graph, int min_intermediate, int max_intermediate,
         long long cap, std::uint64_t seed) {
        R2REnumerationParams params;
        params.min_intermediate = min_intermediate;
        params.max_intermediate = max_intermediate;
        params.per_scene_cap = cap;
        return enumerate_r2r_paths(graph, params, seed);
      },
      py::arg("graph"), py::arg("min_intermediate") = 3,
      py::arg("max_intermediate") = 5, py::arg("cap") = 50000,
      py::arg("seed") = 1);

  py::class_<ObjectAnnotation>(m, "ObjectAnnotation")
      .def_readonly("object_id", &ObjectAnnotation::object_id)
      .def_readonly("label", &ObjectAnnotation::label)
      .def_readonly("position", &ObjectAnnotation::position)
      .def_readonly("anchor_viewpoint", &ObjectAnnotation::anchor_viewpoint)
      .def_readonly("anchor_distance", &ObjectAnnotation::anchor_distance)
      .def_readonly("eligible", &ObjectAnnotation::eligible);

  m.def(
      "place_objects",
      [](const OccupancyGrid &grid, const NavGraph &graph, int count,
         double max_anchor_distance, std::uint64_t seed) {
        ObjectParams params;
        params.count = count;
        params.max_anchor_distance = max_anchor_distance;
        return place_objects(grid, graph, params, seed);
      },
      py::arg("grid"), py::arg("graph"), py::arg("count") = 12,
      py::arg("max_anchor_distance") = 3.0, py::arg("seed") = 1);
  m.def(
      "enumerate_object_paths",
      [](const NavGraph &graph, const std::vector<ObjectAnnotation> &objects,
         int min_edges, int max_edges, long long cap, std::uint64_t seed) {
        ObjectPathParams params;
        params.min_edges = min_edges;
        params.max_edges = max_edges;
        params.per_object_cap = cap;
        return enumerate_object_paths(graph, objects, params, seed);
      },
      py::arg("graph"), py::arg("objects"), py::arg("min_edges") = 4,
      py::arg("max_edges") = 9, py::arg("cap") = 200, py::arg("seed") = 1);

  py::class_<InstructionRecord>(m, "InstructionRecord")
      .def_readonly("tokens", &InstructionRecord::tokens)
      .def_readonly("speaker_tag", &InstructionRecord::speaker_tag)
      .def("text", &InstructionRecord::text);

  m.def(
      "generate_instruction",
      [](const OccupancyGrid &grid, const NavGraph &graph,
         const Trajectory &trajectory,
         const std::vector<ObjectAnnotation> &objects, std::uint64_t seed) {
        return generate_instruction(grid, graph, trajectory, objects, seed);
      },
      py::arg("grid"), py::arg("graph"), py::arg("trajectory"),
      py::arg("objects") = std::vector<ObjectAnnotation>{},
      py::arg("seed") = 1);

  py::class_<BleuScore>(m, "BleuScore")
      .def_readonly("value", &BleuScore::value)
      .def_readonly("precisions", &BleuScore::precisions)
      .def_readonly("brevity_penalty", &BleuScore::brevity_penalty);

  m.def("bleu4", &bleu4, py::arg("candidate"), py::arg("references"));

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("tl", &EvalResult::tl)
      .def_readonly("ne", &EvalResult::ne)
      .def_readonly("osr", &EvalResult::osr)
      .def_readonly("sr", &EvalResult::sr)
      .def_readonly("spl", &EvalResult::spl)
      .def_readonly("ndtw", &EvalResult::ndtw)
      .def_readonly("gp", &EvalResult::gp)
      .def_readonly("shortest_dist", &EvalResult::shortest_dist)
      .def_readonly("rgs", &EvalResult::rgs)
      .def_readonly("rgspl", &EvalResult::rgspl);

  py::enum_<Split>(m, "Split")
      .value("TRAIN", Split::kTrain)
      .value("VAL_SEEN", Split::kValSeen)
      .value("VAL_UNSEEN", Split::kValUnseen);

  py::class_<Episode>(m, "Episode")
      .def_readonly("episode_id", &Episode::episode_id)
      .def_readonly("trajectory", &Episode::trajectory)
      .def_readonly("instruction", &Episode::instruction)
      .def_readonly("split", &Episode::split);

  py::class_<AgentRun>(m, "AgentRun")
      .def(py::init<>())
      .def_readwrite("episode_id", &AgentRun::episode_id)
      .def_readwrite("visited", &AgentRun::visited)
      .def_readwrite("selected_object", &AgentRun::selected_object);

  m.def("evaluate_run", &evaluate_run, py::arg("episode"), py::arg("run"),
        py::arg("grid"), py::arg("graph"), py::arg("success_radius") = 3.0);
  m.def("oracle_follower", &oracle_follower, py::arg("episode"),
        py::arg("graph"));
  m.def("noisy_follower", &noisy_follower, py::arg("episode"), py::arg("graph"),
        py::arg("p_wrong"), py::arg("seed") = 1);
  m.def(
      "aggregate",
      [](const std::vector<EvalResult> &results) {
        return aggregate(std::span<const EvalResult>(results));
      },
      py::arg("results"));

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("seed", &PipelineConfig::seed)
      .def_readwrite("scene_count", &PipelineConfig::scene_count)
      .def_readwrite("bounds_width", &PipelineConfig::bounds_width)
      .def_readwrite("bounds_height", &PipelineConfig::bounds_height)
      .def_readwrite("obstacle_density", &PipelineConfig::obstacle_density)
      .def_readwrite("scene_count", &PipelineConfig::scene_count)
      .def_readwrite("object_count", &PipelineConfig::object_count)
      .def_readwrite("per_scene_cap", &PipelineConfig::per_scene_cap)
      .def_readwrite("per_object_cap", &PipelineConfig::per_object_cap)
      .def_readwrite("ratio_unseen", &PipelineConfig::ratio_unseen)
      .def_readwrite("ratio_val_seen", &PipelineConfig::ratio_val_seen)
      .def_readwrite("shard_size", &PipelineConfig::shard_size)
      .def_readwrite("episode_window", &PipelineConfig::episode_window)
      .def_readwrite("workers", &PipelineConfig::workers)
      .def("validate", &PipelineConfig::validate)
      .def("serialize", &PipelineConfig::serialize)
      .def("digest", &PipelineConfig::digest)
      .def_static("parse", &PipelineConfig::parse)
      .def_static("load", &PipelineConfig::load);

  py::class_<SceneOutcome>(m, "SceneOutcome")
      .def_readonly("scene_id", &SceneOutcome::scene_id)
      .def_readonly("ok", &SceneOutcome::ok)
      .def_readonly("error", &SceneOutcome::error)
      .def_readonly("quality", &SceneOutcome::quality)
      .def_readonly("episode_count", &SceneOutcome::episode_count);

  py::class_<Manifest>(m, "Manifest")
      .def_readonly("config_digest", &Manifest::config_digest)
      .def_readonly("seed", &Manifest::seed)
      .def_readonly("scenes", &Manifest::scenes)
      .def_readonly("episodes_total", &Manifest::episodes_total)
      .def_readonly("train_total", &Manifest::train_total)
      .def_readonly("val_seen_total", &Manifest::val_seen_total)
      .def_readonly("val_unseen_total", &Manifest::val_unseen_total)
      .def_readonly("shard_count", &Manifest::shard_count)
      .def_readonly("buffer_peak", &Manifest::buffer_peak)
      .def("failed_scenes", &Manifest::failed_scenes)
      .def("serialize", &Manifest::serialize);

  m.def(
      "pipeline_run",
      [](const PipelineConfig &config, const std::string &out_dir) {
        return pipeline_run(config, out_dir);
      },
      py::arg("config"), py::arg("out_dir"));

  m.def(
      "read_shard",
      [](const std::string &path) { return read_shard(path, nullptr); },
      py::arg("path"));
  m.def(
      "render_svg",
      [](const OccupancyGrid &grid, const NavGraph *graph,
         const std::vector<Trajectory> &trajectories) {
        return render_svg(grid, graph, trajectories);
      },
      py::arg("grid"), py::arg("graph") = nullptr,
      py::arg("trajectories") = std::vector<Trajectory>{});
}
