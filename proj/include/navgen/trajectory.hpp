#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "navgen/nav_graph.hpp"

namespace navgen {

enum class TrajectoryStyle { kR2R, kReverie };

struct Trajectory {
  std::string scene_id;
  std::vector<int> node_ids;
  double length = 0.0;  // sum of edge lengths along the route
  TrajectoryStyle style = TrajectoryStyle::kR2R;
  std::optional<int> target_object;

  int edge_hops() const { return static_cast<int>(node_ids.size()) - 1; }
};

// Distances from every node to `dst` under edge-length weights. Neighbour
// relaxation follows ascending id order, ties keep the first parent.
std::vector<double> distances_to(const NavGraph &graph, int dst);

// The canonical shortest path: minimum total length, ties broken by the
// lexicographically smallest node-id sequence. At each step the walk picks
// the lowest-id neighbour n with dist[cur] == w(cur, n) + dist[n], which is
// float-exact because Dijkstra assigned dist[cur] through such a neighbour.
std::optional<std::vector<int>> canonical_path(const NavGraph &graph, int src,
                                               int dst,
                                               const std::vector<double> &dist_to_dst,
                                               int max_nodes = -1);

std::optional<Trajectory> shortest_path(const NavGraph &graph, int src, int dst);

struct R2REnumerationParams {
  int min_intermediate = 3;
  int max_intermediate = 5;
  // Seeded uniform subsample cap; <= 0 disables the cap.
  long long per_scene_cap = 50000;
};

// All ordered (src, dst) pairs whose canonical shortest path has the
// requested number of intermediate nodes. The result is sorted by
// (src, dst); a route and its reverse count separately.
std::vector<Trajectory> enumerate_r2r_paths(const NavGraph &graph,
                                            const R2REnumerationParams &params,
                                            std::uint64_t seed);

}  // namespace navgen
