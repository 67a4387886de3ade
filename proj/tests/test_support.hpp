#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "navgen/nav_graph.hpp"
#include "navgen/occupancy_grid.hpp"

namespace navgen::testsupport {

// Builds a grid from ASCII art rows ('.' free, '#' obstacle). Rows must be
// equal length; the art must already contain the obstacle boundary.
inline OccupancyGrid grid_from_ascii(const std::string &scene_id, double res,
                                     const std::vector<std::string> &rows) {
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  for (const std::string &row : rows) {
    for (char c : row) {
      cells.push_back(c == '#' ? Cell::kObstacle : Cell::kFree);
    }
  }
  return OccupancyGrid(scene_id, width, height, res, std::move(cells));
}

// Open rectangle: obstacle ring around an all-free interior of the given
// meter dimensions.
inline OccupancyGrid open_grid(const std::string &scene_id, double width_m,
                               double height_m, double res) {
  const int w = static_cast<int>(std::llround(width_m / res)) + 2;
  const int h = static_cast<int>(std::llround(height_m / res)) + 2;
  std::vector<std::string> rows(static_cast<std::size_t>(h),
                                std::string(static_cast<std::size_t>(w), '.'));
  for (int c = 0; c < w; ++c) {
    rows.front()[static_cast<std::size_t>(c)] = '#';
    rows.back()[static_cast<std::size_t>(c)] = '#';
  }
  for (int r = 0; r < h; ++r) {
    rows[static_cast<std::size_t>(r)].front() = '#';
    rows[static_cast<std::size_t>(r)].back() = '#';
  }
  return grid_from_ascii(scene_id, res, rows);
}

// Independent geodesic oracle: relax the 8-connected free-cell graph until a
// fixpoint (no heap, no early exit), with the same no-corner-cutting rule.
inline std::vector<double> relaxation_distances(const OccupancyGrid &grid,
                                                const CellIndex &source) {
  const int w = grid.width();
  const int h = grid.height();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(w) * h, inf);
  dist[static_cast<std::size_t>(source.row) * w + source.col] = 0.0;
  const double res = grid.resolution();
  const double diag = res * std::sqrt(2.0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int row = 0; row < h; ++row) {
      for (int col = 0; col < w; ++col) {
        if (!grid.is_free(col, row)) {
          continue;
        }
        const double here = dist[static_cast<std::size_t>(row) * w + col];
        if (here == inf) {
          continue;
        }
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) {
              continue;
            }
            const int nc = col + dc;
            const int nr = row + dr;
            if (!grid.is_free(nc, nr)) {
              continue;
            }
            if (dr != 0 && dc != 0 &&
                (!grid.is_free(col + dc, row) || !grid.is_free(col, row + dr))) {
              continue;
            }
            const double step = (dr != 0 && dc != 0) ? diag : res;
            double &slot = dist[static_cast<std::size_t>(nr) * w + nc];
            if (here + step < slot) {
              slot = here + step;
              changed = true;
            }
          }
        }
      }
    }
  }
  return dist;
}

// Tiny undirected weighted graph for trajectory tests.
inline NavGraph graph_from_edges(
    const std::string &scene_id, const std::vector<Point2D> &positions,
    const std::vector<std::tuple<int, int, double>> &weighted_edges) {
  std::vector<Viewpoint> viewpoints;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    viewpoints.push_back(Viewpoint{static_cast<int>(i), positions[i], 1});
  }
  std::vector<NavEdge> edges;
  for (const auto &[a, b, len] : weighted_edges) {
    NavEdge e;
    e.a = a;
    e.b = b;
    e.length = len;
    e.origin = EdgeOrigin::kRough;
    edges.push_back(e);
  }
  return NavGraph(scene_id, std::move(viewpoints), std::move(edges));
}

// Line graph 0-1-2-...-(n-1) with unit edges spaced 1 m apart.
inline NavGraph line_graph(int n) {
  std::vector<Point2D> positions;
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 0; i < n; ++i) {
    positions.push_back(Point2D{0.5 + i, 0.5});
    if (i > 0) {
      edges.emplace_back(i - 1, i, 1.0);
    }
  }
  return graph_from_edges("line", positions, edges);
}

}  // namespace navgen::testsupport
