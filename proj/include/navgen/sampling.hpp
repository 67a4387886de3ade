#pragma once

#include <cstdint>
#include <vector>

#include "navgen/occupancy_grid.hpp"

namespace navgen {

struct SamplingParams {
  double min_geodesic_separation = 0.4;  // meters, strict floor
  double clearance_radius = 0.2;         // meters
  // Candidate draw budget factor: total draws =
  // factor * navigable_area / separation^2.
  double budget_factor = 50.0;
};

// Dart-throwing sampler over free cell centers with a geodesic separation
// floor. Candidates are drawn uniformly from cells whose centers keep
// clearance_radius plus half a cell diagonal of margin to obstacles
// (viewpoints must stay connectable by straight clear segments). The result
// is maximal under the draw budget and deterministic per seed.
std::vector<Point2D> sample_navigable_points(const OccupancyGrid &grid,
                                             const SamplingParams &params,
                                             std::uint64_t seed);

}  // namespace navgen
