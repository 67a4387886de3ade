#include "navgen/occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "navgen/errors.hpp"
#include "navgen/textio.hpp"

namespace navgen {

namespace {

// Cap for the cached center-to-obstacle distances. Clearance queries above
// this value fall back to the exact window scan.
constexpr double kClearanceCap = 0.5;

double point_to_cell_distance(const Point2D &p, int col, int row, double res) {
  const double x0 = col * res;
  const double y0 = row * res;
  const double dx = std::max({x0 - p.x, 0.0, p.x - (x0 + res)});
  const double dy = std::max({y0 - p.y, 0.0, p.y - (y0 + res)});
  return std::hypot(dx, dy);
}

}  // namespace

OccupancyGrid::OccupancyGrid(std::string scene_id, int width, int height,
                             double resolution, std::vector<Cell> cells)
    : scene_id_(std::move(scene_id)),
      width_(width),
      height_(height),
      resolution_(resolution),
      cells_(std::move(cells)) {
  if (width_ < 3 || height_ < 3) {
    throw DataError("grid must be at least 3x3, got " + format_int(width_) +
                    "x" + format_int(height_));
  }
  if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) {
    throw DataError("grid resolution must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width_) * height_) {
    throw DataError("grid cell payload does not match dimensions");
  }
  if (scene_id_.empty() ||
      scene_id_.find_first_of(" \t\r\n") != std::string::npos) {
    throw DataError("scene_id must be non-empty and contain no whitespace");
  }
  for (int col = 0; col < width_; ++col) {
    if (at(col, 0) != Cell::kObstacle || at(col, height_ - 1) != Cell::kObstacle) {
      throw DataError("grid boundary must be obstacle (scene " + scene_id_ + ")");
    }
  }
  for (int row = 0; row < height_; ++row) {
    if (at(0, row) != Cell::kObstacle || at(width_ - 1, row) != Cell::kObstacle) {
      throw DataError("grid boundary must be obstacle (scene " + scene_id_ + ")");
    }
  }
  free_cell_count_ = static_cast<std::size_t>(
      std::count(cells_.begin(), cells_.end(), Cell::kFree));

  // Capped distance transform from cell centers to obstacle rectangles.
  clearance_cap_ = kClearanceCap;
  const int window = static_cast<int>(std::ceil(clearance_cap_ / resolution_)) + 1;
  center_clearance_.assign(cells_.size(), clearance_cap_ + resolution_);
  for (int row = 0; row < height_; ++row) {
    for (int col = 0; col < width_; ++col) {
      const std::size_t idx = static_cast<std::size_t>(row) * width_ + col;
      if (at(col, row) == Cell::kObstacle) {
        center_clearance_[idx] = 0.0;
        continue;
      }
      const Point2D c = center_of(col, row);
      double best = clearance_cap_ + resolution_;
      const int r0 = std::max(0, row - window);
      const int r1 = std::min(height_ - 1, row + window);
      const int c0 = std::max(0, col - window);
      const int c1 = std::min(width_ - 1, col + window);
      for (int r = r0; r <= r1; ++r) {
        for (int cc = c0; cc <= c1; ++cc) {
          if (at(cc, r) != Cell::kObstacle) {
            continue;
          }
          best = std::min(best, point_to_cell_distance(c, cc, r, resolution_));
        }
      }
      center_clearance_[idx] = best;
    }
  }
}

double OccupancyGrid::obstacle_distance(const Point2D &p, double cap) const {
  const CellIndex cell = cell_of(p);
  const int window = static_cast<int>(std::ceil(cap / resolution_)) + 1;
  const int r0 = std::max(0, cell.row - window);
  const int r1 = std::min(height_ - 1, cell.row + window);
  const int c0 = std::max(0, cell.col - window);
  const int c1 = std::min(width_ - 1, cell.col + window);
  double best = cap + resolution_;
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (at(c, r) != Cell::kObstacle) {
        continue;
      }
      best = std::min(best, point_to_cell_distance(p, c, r, resolution_));
    }
  }
  return best;
}

bool OccupancyGrid::has_clearance(const Point2D &p, double clearance) const {
  if (!in_bounds(p)) {
    return false;
  }
  const CellIndex cell = cell_of(p);
  if (at(cell.col, cell.row) == Cell::kObstacle) {
    return false;
  }
  // The sample point is at most half a cell diagonal from its cell center.
  const double slack = resolution_ * std::numbers::sqrt2 * 0.5;
  const double cached = center_clearance(cell.col, cell.row);
  if (clearance + slack < clearance_cap_ && cached > clearance + slack) {
    return true;
  }
  return obstacle_distance(p, clearance) > clearance;
}

std::string OccupancyGrid::serialize() const {
  std::string out;
  out.reserve(cells_.size() + 128);
  out += "gridmap v1\n";
  out += "scene " + scene_id_ + "\n";
  out += "size " + format_int(width_) + " " + format_int(height_) + "\n";
  out += "resolution " + format_double(resolution_) + "\n";
  for (int row = 0; row < height_; ++row) {
    for (int col = 0; col < width_; ++col) {
      out += at(col, row) == Cell::kFree ? '.' : '#';
    }
    out += '\n';
  }
  return out;
}

OccupancyGrid OccupancyGrid::parse(const std::string &text) {
  const auto lines = split_char(text, '\n');
  if (lines.empty() || lines[0] != "gridmap v1") {
    throw DataError(ErrorCode::kVersionMismatch,
                    "grid file: expected 'gridmap v1' header");
  }
  if (lines.size() < 4) {
    throw DataError(ErrorCode::kTruncated, "grid file: missing header lines");
  }
  auto scene_parts = split_ws(lines[1]);
  auto size_parts = split_ws(lines[2]);
  auto res_parts = split_ws(lines[3]);
  if (scene_parts.size() != 2 || scene_parts[0] != "scene" ||
      size_parts.size() != 3 || size_parts[0] != "size" ||
      res_parts.size() != 2 || res_parts[0] != "resolution") {
    throw DataError("grid file: malformed header");
  }
  const int width = static_cast<int>(parse_int(size_parts[1], "grid width"));
  const int height = static_cast<int>(parse_int(size_parts[2], "grid height"));
  const double resolution = parse_double(res_parts[1], "grid resolution");
  if (width <= 0 || height <= 0) {
    throw DataError("grid file: non-positive dimensions");
  }
  if (lines.size() < static_cast<std::size_t>(4 + height)) {
    throw DataError(ErrorCode::kTruncated, "grid file: missing raster rows");
  }
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    const std::string_view line = lines[static_cast<std::size_t>(4 + row)];
    if (line.size() != static_cast<std::size_t>(width)) {
      throw DataError("grid file: row " + format_int(row) + " has width " +
                      format_int(static_cast<long long>(line.size())));
    }
    for (char c : line) {
      if (c == '.') {
        cells.push_back(Cell::kFree);
      } else if (c == '#') {
        cells.push_back(Cell::kObstacle);
      } else {
        throw DataError("grid file: unexpected cell character");
      }
    }
  }
  return OccupancyGrid(std::string(scene_parts[1]), width, height, resolution,
                       std::move(cells));
}

std::vector<int> free_components(const OccupancyGrid &grid, int *count) {
  const int w = grid.width();
  const int h = grid.height();
  std::vector<int> comp(static_cast<std::size_t>(w) * h, -1);
  int next = 0;
  std::deque<CellIndex> queue;
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const std::size_t idx = static_cast<std::size_t>(row) * w + col;
      if (!grid.is_free(col, row) || comp[idx] >= 0) {
        continue;
      }
      comp[idx] = next;
      queue.push_back(CellIndex{col, row});
      while (!queue.empty()) {
        const CellIndex cur = queue.front();
        queue.pop_front();
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) {
              continue;
            }
            const int nc = cur.col + dc;
            const int nr = cur.row + dr;
            if (!grid.is_free(nc, nr)) {
              continue;
            }
            if (dr != 0 && dc != 0 &&
                (!grid.is_free(cur.col + dc, cur.row) ||
                 !grid.is_free(cur.col, cur.row + dr))) {
              continue;  // no corner cutting
            }
            const std::size_t nidx = static_cast<std::size_t>(nr) * w + nc;
            if (comp[nidx] < 0) {
              comp[nidx] = next;
              queue.push_back(CellIndex{nc, nr});
            }
          }
        }
      }
      ++next;
    }
  }
  if (count != nullptr) {
    *count = next;
  }
  return comp;
}

}  // namespace navgen
