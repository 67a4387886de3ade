#include "navgen/objects.hpp"

#include <algorithm>
#include <limits>

#include "navgen/errors.hpp"
#include "navgen/grid_search.hpp"
#include "navgen/rng.hpp"

namespace navgen {

const std::vector<std::string> &object_vocabulary() {
  static const std::vector<std::string> kVocabulary = {
      "chair", "table", "lamp",   "sofa",  "plant",  "shelf",
      "sink",  "bed",   "desk",   "stool", "mirror", "cabinet",
      "rug",   "vase",  "heater", "bench"};
  return kVocabulary;
}

std::vector<ObjectAnnotation> place_objects(const OccupancyGrid &grid,
                                            const NavGraph &graph,
                                            const ObjectParams &params,
                                            std::uint64_t seed) {
  if (params.count < 0) {
    throw ConfigError("object placement: count must be non-negative");
  }
  std::vector<CellIndex> free_cells;
  free_cells.reserve(grid.free_cell_count());
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (grid.is_free(col, row)) {
        free_cells.push_back(CellIndex{col, row});
      }
    }
  }
  if (free_cells.empty()) {
    throw DataError("object placement: grid has no free cells");
  }

  SeededRng rng(seed);
  const auto &vocab = object_vocabulary();
  std::vector<ObjectAnnotation> out;
  out.reserve(static_cast<std::size_t>(params.count));
  for (int i = 0; i < params.count; ++i) {
    ObjectAnnotation obj;
    obj.object_id = i;
    obj.label = vocab[static_cast<std::size_t>(
        rng.uniform_u64(0, vocab.size() - 1))];
    obj.position = grid.center_of(free_cells[static_cast<std::size_t>(
        rng.uniform_u64(0, free_cells.size() - 1))]);

    obj.anchor_viewpoint = -1;
    double best = std::numeric_limits<double>::infinity();
    for (const Viewpoint &v : graph.viewpoints()) {
      const double d = euclidean(obj.position, v.position);
      if (d < best) {
        best = d;
        obj.anchor_viewpoint = v.id;
      }
    }
    obj.anchor_distance = best;
    obj.eligible =
        obj.anchor_viewpoint >= 0 && best <= params.max_anchor_distance &&
        line_traversable(grid, graph.position(obj.anchor_viewpoint),
                         obj.position, 0.0);
    out.push_back(std::move(obj));
  }
  return out;
}

std::vector<Trajectory> enumerate_object_paths(
    const NavGraph &graph, const std::vector<ObjectAnnotation> &objects,
    const ObjectPathParams &params, std::uint64_t seed) {
  if (params.min_edges < 1 || params.min_edges > params.max_edges) {
    throw ConfigError("object paths: invalid edge-count bounds");
  }
  std::vector<Trajectory> out;
  for (const ObjectAnnotation &obj : objects) {
    if (!obj.eligible) {
      continue;
    }
    const int dst = obj.anchor_viewpoint;
    const std::vector<double> dist = distances_to(graph, dst);
    std::vector<Trajectory> per_object;
    for (int src = 0; src < graph.node_count(); ++src) {
      if (src == dst ||
          dist[static_cast<std::size_t>(src)] ==
              std::numeric_limits<double>::infinity()) {
        continue;
      }
      auto path = canonical_path(graph, src, dst, dist, params.max_edges + 2);
      if (!path) {
        continue;
      }
      const int hops = static_cast<int>(path->size()) - 1;
      if (hops < params.min_edges || hops > params.max_edges) {
        continue;
      }
      Trajectory traj;
      traj.scene_id = graph.scene_id();
      traj.node_ids = std::move(*path);
      traj.length = dist[static_cast<std::size_t>(src)];
      traj.style = TrajectoryStyle::kReverie;
      traj.target_object = obj.object_id;
      per_object.push_back(std::move(traj));
    }
    if (params.per_object_cap > 0 &&
        static_cast<long long>(per_object.size()) > params.per_object_cap) {
      SeededRng rng(derive_seed(seed, "object", static_cast<std::uint64_t>(
                                                   obj.object_id)));
      const auto keep = rng.sample_indices(
          per_object.size(), static_cast<std::size_t>(params.per_object_cap));
      std::vector<Trajectory> capped;
      capped.reserve(keep.size());
      for (std::size_t idx : keep) {
        capped.push_back(std::move(per_object[idx]));
      }
      per_object = std::move(capped);
    }
    for (auto &traj : per_object) {
      out.push_back(std::move(traj));
    }
  }
  return out;
}

}  // namespace navgen
