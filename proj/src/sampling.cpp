#include "navgen/sampling.hpp"

#include <cmath>
#include <numbers>

#include "navgen/errors.hpp"
#include "navgen/grid_search.hpp"
#include "navgen/rng.hpp"

namespace navgen {

std::vector<Point2D> sample_navigable_points(const OccupancyGrid &grid,
                                             const SamplingParams &params,
                                             std::uint64_t seed) {
  if (!(params.min_geodesic_separation > 0.0)) {
    throw ConfigError("sampling: separation floor must be positive");
  }
  if (grid.free_cell_count() == 0) {
    throw DataError("sampling: grid has no free cells");
  }

  const int w = grid.width();
  const int h = grid.height();
  const double margin =
      params.clearance_radius + grid.resolution() * std::numbers::sqrt2 * 0.5;

  std::vector<CellIndex> admissible;
  admissible.reserve(grid.free_cell_count());
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      if (grid.is_free(col, row) && grid.center_clearance(col, row) > margin) {
        admissible.push_back(CellIndex{col, row});
      }
    }
  }
  if (admissible.empty()) {
    return {};
  }

  // blocked[i] marks cells whose geodesic distance to an accepted point is
  // <= the separation floor, maintained by bounded Dijkstras from each
  // accepted point.
  std::vector<char> blocked(static_cast<std::size_t>(w) * h, 0);
  const double sep = params.min_geodesic_separation;
  const long long budget = std::llround(
      params.budget_factor * grid.navigable_area() / (sep * sep));

  SeededRng rng(seed);
  std::vector<Point2D> points;
  for (long long draw = 0; draw < budget; ++draw) {
    const CellIndex cell = admissible[static_cast<std::size_t>(
        rng.uniform_u64(0, admissible.size() - 1))];
    const std::size_t idx = static_cast<std::size_t>(cell.row) * w + cell.col;
    if (blocked[idx]) {
      continue;
    }
    points.push_back(grid.center_of(cell));
    FieldOptions options;
    options.max_radius = sep;
    const DistanceField field = geodesic_field(grid, {cell}, options);
    for (std::size_t i = 0; i < field.dist.size(); ++i) {
      if (field.dist[i] <= sep) {
        blocked[i] = 1;
      }
    }
  }
  return points;
}

}  // namespace navgen
