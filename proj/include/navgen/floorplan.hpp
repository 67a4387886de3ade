#pragma once

#include <cstdint>
#include <string>

#include "navgen/occupancy_grid.hpp"

namespace navgen {

// Parameters for the synthetic indoor floorplan generator: axis-aligned rooms
// in a slot layout, doorway openings between adjacent rooms, and scattered
// rectangular clutter. Purely synthetic; it does not mimic any scanned
// dataset's geometry.
struct FloorplanSpec {
  std::string scene_id = "scene";
  double bounds_width = 14.0;   // meters, outer bounds
  double bounds_height = 12.0;  // meters, outer bounds
  int room_count_min = 4;
  int room_count_max = 8;
  double corridor_width_min = 0.8;  // meters, doorway opening
  double corridor_width_max = 1.2;  // meters, doorway opening
  // Fraction of the interior to cover with obstacle cells (interior walls
  // plus clutter). Zero produces a single open rectangle.
  double obstacle_density = 0.16;
  double resolution = 0.1;        // meters per cell
  double clearance_radius = 0.2;  // agent clearance, meters
  std::uint64_t seed = 1;
};

void validate_floorplan_spec(const FloorplanSpec &spec);

// Deterministic for a fixed spec. Guarantees a single connected FREE
// component (also under the clearance-restricted mask used for sampling and
// refinement) and a navigable area within +-20% of
// interior_area * (1 - obstacle_density). Throws DataError with the retry
// count when the constraints cannot be satisfied.
OccupancyGrid generate_floorplan(const FloorplanSpec &spec);

}  // namespace navgen
