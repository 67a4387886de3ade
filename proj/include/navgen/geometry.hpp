#pragma once

#include <cmath>

namespace navgen {

// World-frame position in meters. The grid cell (col, row) has its center at
// ((col + 0.5) * resolution, (row + 0.5) * resolution).
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D &a, const Point2D &b) {
    return a.x == b.x && a.y == b.y;
  }
};

struct CellIndex {
  int col = 0;
  int row = 0;

  friend bool operator==(const CellIndex &a, const CellIndex &b) {
    return a.col == b.col && a.row == b.row;
  }
};

inline double euclidean(const Point2D &a, const Point2D &b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Bearing of the segment a->b in radians, atan2 convention.
inline double bearing(const Point2D &a, const Point2D &b) {
  return std::atan2(b.y - a.y, b.x - a.x);
}

// Wraps an angle difference into (-pi, pi].
double wrap_angle(double radians);

}  // namespace navgen
