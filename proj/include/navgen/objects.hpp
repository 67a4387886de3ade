#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgen/nav_graph.hpp"
#include "navgen/occupancy_grid.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

struct ObjectAnnotation {
  int object_id = 0;
  std::string label;
  Point2D position;
  int anchor_viewpoint = -1;     // nearest viewpoint, Euclidean, ties -> lowest id
  double anchor_distance = 0.0;  // meters
  // Within 3 m of the anchor and on an unobstructed sight line from it.
  bool eligible = false;
};

struct ObjectParams {
  int count = 12;
  double max_anchor_distance = 3.0;  // meters
};

// Synthetic object annotations: seeded placement on free cells, labels from
// a fixed vocabulary, anchored to the nearest viewpoint.
std::vector<ObjectAnnotation> place_objects(const OccupancyGrid &grid,
                                            const NavGraph &graph,
                                            const ObjectParams &params,
                                            std::uint64_t seed);

struct ObjectPathParams {
  int min_edges = 4;
  int max_edges = 9;
  long long per_object_cap = 200;  // <= 0 disables the cap
};

// For each eligible object: the canonical shortest paths that end at its
// anchor viewpoint with an edge count in [min_edges, max_edges], capped per
// object by a seeded uniform subsample. Sorted by (object_id, src).
std::vector<Trajectory> enumerate_object_paths(const NavGraph &graph,
                                               const std::vector<ObjectAnnotation> &objects,
                                               const ObjectPathParams &params,
                                               std::uint64_t seed);

const std::vector<std::string> &object_vocabulary();

}  // namespace navgen
