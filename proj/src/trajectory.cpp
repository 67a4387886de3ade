#include "navgen/trajectory.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "navgen/errors.hpp"
#include "navgen/rng.hpp"

namespace navgen {

std::vector<double> distances_to(const NavGraph &graph, int dst) {
  const int n = graph.node_count();
  std::vector<double> dist(static_cast<std::size_t>(n),
                           std::numeric_limits<double>::infinity());
  if (dst < 0 || dst >= n) {
    throw DataError("shortest path: node id out of range");
  }
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[static_cast<std::size_t>(dst)] = 0.0;
  heap.emplace(0.0, dst);
  while (!heap.empty()) {
    const auto [d, cur] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(cur)]) {
      continue;
    }
    for (const auto &[nbr, weight] : graph.neighbors(cur)) {
      const double cand = weight + dist[static_cast<std::size_t>(cur)];
      if (cand < dist[static_cast<std::size_t>(nbr)]) {
        dist[static_cast<std::size_t>(nbr)] = cand;
        heap.emplace(cand, nbr);
      }
    }
  }
  return dist;
}

std::optional<std::vector<int>> canonical_path(
    const NavGraph &graph, int src, int dst,
    const std::vector<double> &dist_to_dst, int max_nodes) {
  if (dist_to_dst[static_cast<std::size_t>(src)] ==
      std::numeric_limits<double>::infinity()) {
    return std::nullopt;
  }
  std::vector<int> path{src};
  int cur = src;
  while (cur != dst) {
    if (max_nodes > 0 && static_cast<int>(path.size()) >= max_nodes) {
      return std::nullopt;
    }
    int next = -1;
    for (const auto &[nbr, weight] : graph.neighbors(cur)) {
      if (dist_to_dst[static_cast<std::size_t>(cur)] ==
          weight + dist_to_dst[static_cast<std::size_t>(nbr)]) {
        next = nbr;
        break;
      }
    }
    if (next < 0) {
      throw DataError("canonical path: no descending neighbour (corrupt graph)");
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

std::optional<Trajectory> shortest_path(const NavGraph &graph, int src, int dst) {
  const int n = graph.node_count();
  if (src < 0 || src >= n || dst < 0 || dst >= n) {
    throw DataError("shortest path: node id out of range");
  }
  const std::vector<double> dist = distances_to(graph, dst);
  auto path = canonical_path(graph, src, dst, dist);
  if (!path) {
    return std::nullopt;
  }
  Trajectory traj;
  traj.scene_id = graph.scene_id();
  traj.node_ids = std::move(*path);
  traj.length = dist[static_cast<std::size_t>(src)];
  traj.style = TrajectoryStyle::kR2R;
  return traj;
}

std::vector<Trajectory> enumerate_r2r_paths(const NavGraph &graph,
                                            const R2REnumerationParams &params,
                                            std::uint64_t seed) {
  if (params.min_intermediate < 0 ||
      params.min_intermediate > params.max_intermediate) {
    throw ConfigError("r2r enumeration: invalid intermediate-node bounds");
  }
  const int n = graph.node_count();
  const int min_nodes = params.min_intermediate + 2;
  const int max_nodes = params.max_intermediate + 2;

  std::vector<Trajectory> out;
  for (int dst = 0; dst < n; ++dst) {
    const std::vector<double> dist = distances_to(graph, dst);
    for (int src = 0; src < n; ++src) {
      if (src == dst ||
          dist[static_cast<std::size_t>(src)] ==
              std::numeric_limits<double>::infinity()) {
        continue;
      }
      auto path = canonical_path(graph, src, dst, dist, max_nodes + 1);
      if (!path || static_cast<int>(path->size()) < min_nodes ||
          static_cast<int>(path->size()) > max_nodes) {
        continue;
      }
      Trajectory traj;
      traj.scene_id = graph.scene_id();
      traj.node_ids = std::move(*path);
      traj.length = dist[static_cast<std::size_t>(src)];
      traj.style = TrajectoryStyle::kR2R;
      out.push_back(std::move(traj));
    }
  }
  std::sort(out.begin(), out.end(), [](const Trajectory &a, const Trajectory &b) {
    if (a.node_ids.front() != b.node_ids.front()) {
      return a.node_ids.front() < b.node_ids.front();
    }
    return a.node_ids.back() < b.node_ids.back();
  });
  if (params.per_scene_cap > 0 &&
      static_cast<long long>(out.size()) > params.per_scene_cap) {
    SeededRng rng(seed);
    const auto keep = rng.sample_indices(
        out.size(), static_cast<std::size_t>(params.per_scene_cap));
    std::vector<Trajectory> capped;
    capped.reserve(keep.size());
    for (std::size_t idx : keep) {
      capped.push_back(std::move(out[idx]));
    }
    out = std::move(capped);
  }
  return out;
}

}  // namespace navgen
