#pragma once

#include <vector>

#include "navgen/nav_graph.hpp"
#include "navgen/occupancy_grid.hpp"

namespace navgen {

// Pairwise geodesic distances between the given points (cell-to-cell metric).
// Unreachable pairs get kUnreachable.
std::vector<std::vector<double>> pairwise_geodesic(
    const OccupancyGrid &grid, const std::vector<Point2D> &points);

// Agglomerative clustering with complete linkage under geodesic distance,
// merging while the smallest cluster distance is strictly below `threshold`.
// Complete linkage caps every cluster's geodesic diameter at the threshold,
// which both avoids chaining and keeps representatives near the middle of
// open space.
//
// Candidate merges are ordered by (distance, lower slot, higher slot) where
// a slot is the cluster's lowest member index. Representatives are geodesic
// medoids (ties to the lowest input index). These rules make the result
// reproducible by a naive reimplementation.
//
// Returns viewpoints ordered by medoid input index with dense ids.
std::vector<Viewpoint> cluster_viewpoints(const std::vector<Point2D> &points,
                                          const OccupancyGrid &grid,
                                          double threshold = 1.0);

}  // namespace navgen
