#include "navgen/grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "navgen/errors.hpp"
#include "navgen/textio.hpp"

namespace navgen {

namespace {

struct HeapEntry {
  double dist;
  int index;
  friend bool operator>(const HeapEntry &a, const HeapEntry &b) {
    return a.dist > b.dist || (a.dist == b.dist && a.index > b.index);
  }
};

// Fixed neighbour order: orthogonals first, then diagonals.
constexpr int kNeighborDc[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kNeighborDr[8] = {0, 0, 1, -1, 1, -1, 1, -1};

}  // namespace

DistanceField geodesic_field(const OccupancyGrid &grid,
                             const std::vector<CellIndex> &sources,
                             const FieldOptions &options) {
  const int w = grid.width();
  const int h = grid.height();
  const double res = grid.resolution();
  const double diag = res * std::numbers::sqrt2;

  DistanceField field;
  field.width = w;
  field.height = h;
  field.dist.assign(static_cast<std::size_t>(w) * h, kUnreachable);
  field.parent.assign(field.dist.size(), -1);
  field.source_id.assign(field.dist.size(), -1);

  auto passable = [&](int col, int row) {
    if (!grid.is_free(col, row)) {
      return false;
    }
    return options.min_center_clearance < 0.0 ||
           grid.center_clearance(col, row) > options.min_center_clearance;
  };

  std::vector<char> pending(field.dist.size(), 0);
  std::size_t pending_count = 0;
  for (const CellIndex &t : options.targets) {
    const std::size_t idx = static_cast<std::size_t>(t.row) * w + t.col;
    if (!pending[idx]) {
      pending[idx] = 1;
      ++pending_count;
    }
  }
  const bool track_targets = pending_count > 0;

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const CellIndex &c = sources[s];
    if (!grid.in_bounds(c.col, c.row) || !passable(c.col, c.row)) {
      continue;
    }
    const std::size_t idx = static_cast<std::size_t>(c.row) * w + c.col;
    if (field.dist[idx] == 0.0) {
      continue;
    }
    field.dist[idx] = 0.0;
    field.source_id[idx] = static_cast<int>(s);
    heap.push(HeapEntry{0.0, static_cast<int>(idx)});
  }

  std::vector<char> done(field.dist.size(), 0);
  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    const std::size_t idx = static_cast<std::size_t>(top.index);
    if (done[idx] || top.dist > field.dist[idx]) {
      continue;
    }
    done[idx] = 1;
    if (top.dist > options.max_radius) {
      // Entries beyond the radius keep tentative values but stop expansion.
      field.dist[idx] = kUnreachable;
      field.parent[idx] = -1;
      field.source_id[idx] = -1;
      continue;
    }
    if (track_targets && pending[idx]) {
      pending[idx] = 0;
      if (--pending_count == 0) {
        break;
      }
    }
    const int col = top.index % w;
    const int row = top.index / w;
    for (int n = 0; n < 8; ++n) {
      const int dc = kNeighborDc[n];
      const int dr = kNeighborDr[n];
      const int nc = col + dc;
      const int nr = row + dr;
      if (!grid.in_bounds(nc, nr) || !passable(nc, nr)) {
        continue;
      }
      if (dc != 0 && dr != 0 &&
          (!passable(col + dc, row) || !passable(col, row + dr))) {
        continue;  // no corner cutting
      }
      const double step = (dc != 0 && dr != 0) ? diag : res;
      const double cand = field.dist[idx] + step;
      const std::size_t nidx = static_cast<std::size_t>(nr) * w + nc;
      if (cand < field.dist[nidx]) {
        field.dist[nidx] = cand;
        field.parent[nidx] = top.index;
        field.source_id[nidx] = field.source_id[idx];
        heap.push(HeapEntry{cand, static_cast<int>(nidx)});
      }
    }
  }

  // Drop tentative values past an unfinished frontier (bounded or
  // early-exited searches); finalized cells are exact.
  for (std::size_t i = 0; i < field.dist.size(); ++i) {
    if (!done[i] && field.dist[i] != kUnreachable) {
      field.dist[i] = kUnreachable;
      field.parent[i] = -1;
      field.source_id[i] = -1;
    }
  }
  return field;
}

std::vector<CellIndex> extract_path(const DistanceField &field,
                                    const CellIndex &target) {
  std::vector<CellIndex> path;
  int idx = target.row * field.width + target.col;
  if (field.dist[static_cast<std::size_t>(idx)] == kUnreachable) {
    return path;
  }
  while (idx >= 0) {
    path.push_back(CellIndex{idx % field.width, idx / field.width});
    idx = field.parent[static_cast<std::size_t>(idx)];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

void check_endpoint(const OccupancyGrid &grid, const Point2D &p,
                    double clearance, const char *which) {
  if (!grid.in_bounds(p)) {
    throw DataError(ErrorCode::kOutOfBounds,
                    std::string("geodesic endpoint ") + which +
                        " outside grid bounds");
  }
  const CellIndex c = grid.cell_of(p);
  if (!grid.is_free(c.col, c.row) || !grid.has_clearance(p, clearance)) {
    throw DataError(ErrorCode::kOnObstacle,
                    std::string("geodesic endpoint ") + which +
                        " lacks clearance or sits on an obstacle");
  }
}

std::optional<double> cell_distance(const OccupancyGrid &grid,
                                    const CellIndex &a, const CellIndex &b) {
  if (a == b) {
    return 0.0;
  }
  FieldOptions options;
  options.targets = {b};
  const DistanceField field = geodesic_field(grid, {a}, options);
  const double d = field.at(b);
  if (d == kUnreachable) {
    return std::nullopt;
  }
  return d;
}

}  // namespace

std::optional<double> geodesic_distance(const OccupancyGrid &grid,
                                        const Point2D &a, const Point2D &b,
                                        double clearance) {
  check_endpoint(grid, a, clearance, "a");
  check_endpoint(grid, b, clearance, "b");
  return cell_distance(grid, grid.cell_of(a), grid.cell_of(b));
}

std::optional<double> geodesic_distance_free(const OccupancyGrid &grid,
                                             const Point2D &a,
                                             const Point2D &b) {
  if (!grid.in_bounds(a) || !grid.in_bounds(b)) {
    throw DataError(ErrorCode::kOutOfBounds,
                    "geodesic endpoint outside grid bounds");
  }
  const CellIndex ca = grid.cell_of(a);
  const CellIndex cb = grid.cell_of(b);
  if (!grid.is_free(ca.col, ca.row) || !grid.is_free(cb.col, cb.row)) {
    throw DataError(ErrorCode::kOnObstacle,
                    "geodesic endpoint sits on an obstacle cell");
  }
  return cell_distance(grid, ca, cb);
}

bool line_traversable(const OccupancyGrid &grid, const Point2D &a,
                      const Point2D &b, double clearance) {
  if (!grid.in_bounds(a) || !grid.in_bounds(b)) {
    return false;
  }
  const double length = euclidean(a, b);
  const double spacing = grid.resolution() / 10.0;
  const int steps = std::max(1, static_cast<int>(std::ceil(length / spacing)));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const Point2D p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
    if (!grid.has_clearance(p, clearance)) {
      return false;
    }
  }
  return true;
}

}  // namespace navgen
