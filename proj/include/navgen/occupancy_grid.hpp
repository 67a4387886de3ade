#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgen/geometry.hpp"

namespace navgen {

enum class Cell : std::uint8_t { kFree = 0, kObstacle = 1 };

// 2D occupancy raster for one scene. Immutable after construction and safe to
// share across threads. Boundary cells are always obstacles (closed world).
class OccupancyGrid {
public:
  OccupancyGrid(std::string scene_id, int width, int height, double resolution,
                std::vector<Cell> cells);

  const std::string &scene_id() const { return scene_id_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }

  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width_ && row >= 0 && row < height_;
  }
  bool in_bounds(const Point2D &p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x < width_ * resolution_ &&
           p.y < height_ * resolution_;
  }

  Cell at(int col, int row) const {
    return cells_[static_cast<std::size_t>(row) * width_ + col];
  }
  bool is_free(int col, int row) const {
    return in_bounds(col, row) && at(col, row) == Cell::kFree;
  }

  CellIndex cell_of(const Point2D &p) const {
    return CellIndex{static_cast<int>(p.x / resolution_),
                     static_cast<int>(p.y / resolution_)};
  }
  Point2D center_of(int col, int row) const {
    return Point2D{(col + 0.5) * resolution_, (row + 0.5) * resolution_};
  }
  Point2D center_of(const CellIndex &c) const { return center_of(c.col, c.row); }

  std::size_t cell_count() const { return cells_.size(); }
  std::size_t free_cell_count() const { return free_cell_count_; }

  // (#FREE cells) * resolution^2, exact.
  double navigable_area() const {
    return static_cast<double>(free_cell_count_) * resolution_ * resolution_;
  }

  // Exact Euclidean distance from p to the nearest obstacle cell rectangle,
  // capped at `cap` (returns a value > cap when no obstacle is that close).
  double obstacle_distance(const Point2D &p, double cap) const;

  // True when no obstacle cell lies within `clearance` of p. Cached center
  // distances give a fast path; borderline cells fall back to the exact scan.
  bool has_clearance(const Point2D &p, double clearance) const;

  // Cached distance from the cell center to the nearest obstacle, capped at
  // clearance_cache_cap().
  double center_clearance(int col, int row) const {
    return center_clearance_[static_cast<std::size_t>(row) * width_ + col];
  }
  double clearance_cache_cap() const { return clearance_cap_; }

  std::string serialize() const;
  static OccupancyGrid parse(const std::string &text);

private:
  std::string scene_id_;
  int width_;
  int height_;
  double resolution_;
  std::vector<Cell> cells_;
  std::size_t free_cell_count_ = 0;
  double clearance_cap_ = 0.0;
  std::vector<double> center_clearance_;
};

inline double navigable_area(const OccupancyGrid &grid) {
  return grid.navigable_area();
}

// Connected components of the FREE region under 8-connectivity with the same
// no-corner-cutting rule as the geodesic metric. Component ids are assigned
// in scan order; obstacle cells get -1.
std::vector<int> free_components(const OccupancyGrid &grid, int *count);

}  // namespace navgen
