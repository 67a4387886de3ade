#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "navgen/occupancy_grid.hpp"

namespace navgen {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Geodesic distances from a set of source cells, computed by Dijkstra over
// the 8-connected FREE cells. Diagonal steps cost sqrt(2) * resolution and
// are allowed only when both orthogonal neighbours are passable (no corner
// cutting). This is the geodesic metric used throughout.
struct DistanceField {
  int width = 0;
  int height = 0;
  std::vector<double> dist;     // kUnreachable where not reached
  std::vector<int> parent;      // flat index of predecessor, -1 at sources
  std::vector<int> source_id;   // index into the source list, -1 unreached

  double at(int col, int row) const {
    return dist[static_cast<std::size_t>(row) * width + col];
  }
  double at(const CellIndex &c) const { return at(c.col, c.row); }
};

struct FieldOptions {
  // Stop expanding once popped distance exceeds this radius.
  double max_radius = kUnreachable;
  // Stop early once all of these cells are finalized.
  std::vector<CellIndex> targets;
  // Restrict passable cells to centers with clearance strictly greater than
  // this value (< 0 disables the restriction and uses all FREE cells).
  double min_center_clearance = -1.0;
};

DistanceField geodesic_field(const OccupancyGrid &grid,
                             const std::vector<CellIndex> &sources,
                             const FieldOptions &options = {});

// Walks parent pointers back from `target` to the reached source.
std::vector<CellIndex> extract_path(const DistanceField &field,
                                    const CellIndex &target);

// Geodesic distance between the cells containing a and b. Preconditions per
// the contract: both points in bounds (OUT_OF_BOUNDS otherwise) and on FREE
// cells with the given clearance (ON_OBSTACLE otherwise). Returns nullopt
// when the points lie in different FREE components.
std::optional<double> geodesic_distance(const OccupancyGrid &grid,
                                        const Point2D &a, const Point2D &b,
                                        double clearance);

// Relaxed variant used by evaluation: endpoints only need to be FREE.
std::optional<double> geodesic_distance_free(const OccupancyGrid &grid,
                                             const Point2D &a,
                                             const Point2D &b);

// True iff every sample point along the segment a->b keeps all obstacle
// cells strictly farther than `clearance`. Samples are placed every
// resolution/10 along the segment, endpoints included.
bool line_traversable(const OccupancyGrid &grid, const Point2D &a,
                      const Point2D &b, double clearance);

}  // namespace navgen
