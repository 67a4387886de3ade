#include <doctest.h>

#include <cmath>

#include "navgen/errors.hpp"
#include "navgen/floorplan.hpp"
#include "navgen/grid_search.hpp"
#include "navgen/rng.hpp"
#include "test_support.hpp"

using namespace navgen;
using namespace navgen::testsupport;

TEST_CASE("geodesic distance of a point to itself is zero") {
  const OccupancyGrid grid = open_grid("self", 2.0, 2.0, 0.1);
  const Point2D p{1.0, 1.0};
  const auto d = geodesic_distance(grid, p, p, 0.2);
  REQUIRE(d.has_value());
  CHECK(*d == 0.0);
}

TEST_CASE("straight corridor distance matches Euclidean within a cell") {
  // 5.6 m x 1 m corridor, endpoints 5 m apart on the axis.
  const OccupancyGrid grid = open_grid("corridor", 5.6, 1.0, 0.1);
  const Point2D a{0.35, 0.55};
  const Point2D b{5.35, 0.55};
  const auto d = geodesic_distance(grid, a, b, 0.2);
  REQUIRE(d.has_value());
  CHECK(std::abs(*d - 5.0) <= grid.resolution() + 1e-12);
}

TEST_CASE("U-shaped corridor equals the exhaustive oracle") {
  // Free cells form a U: two vertical legs joined at the bottom.
  std::vector<std::string> rows;
  const int w = 30, h = 24;
  rows.assign(h, std::string(w, '#'));
  auto carve = [&](int c0, int r0, int c1, int r1) {
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        rows[r][c] = '.';
       }
    }
  };
  carve(2, 2, 8, 21);    // left leg
  carve(21, 2, 27, 21);  // right leg
  carve(2, 16, 27, 21);  // bottom joining both
  const OccupancyGrid grid = grid_from_ascii("ugrid", 0.1, rows);

  const Point2D a = grid.center_of(5, 4);
  const Point2D b = grid.center_of(24, 4);
  const auto got = geodesic_distance(grid, a, b, 0.2);
  REQUIRE(got.has_value());

  const auto oracle = relaxation_distances(grid, grid.cell_of(a));
  const CellIndex cb = grid.cell_of(b);
  const double expected = oracle[static_cast<std::size_t>(cb.row) * w + cb.col];
  CHECK(*got == expected);
  // Around the U is much longer than the straight line.
  CHECK(*got > euclidean(a, b) * 1.5);
}

TEST_CASE("geodesic endpoint preconditions") {
  const OccupancyGrid grid = open_grid("pre", 2.0, 2.0, 0.1);
  const Point2D inside{1.0, 1.0};
  auto code_of = [&](const Point2D &p) {
    try {
      (void)geodesic_distance(grid, inside, p, 0.2);
    } catch (const DataError &e) {
      return e.code();
    }
    return ErrorCode::kData;
  };
  CHECK(code_of(Point2D{5.0, 5.0}) == ErrorCode::kOutOfBounds);
  // On the boundary obstacle ring.
  CHECK(code_of(Point2D{0.05, 0.05}) == ErrorCode::kOnObstacle);
  // Free cell hugging the wall: clearance precondition fails.
  CHECK(code_of(Point2D{0.15, 1.0}) == ErrorCode::kOnObstacle);
}

TEST_CASE("geodesic distance is UNREACHABLE across sealed rooms") {
  const OccupancyGrid grid = grid_from_ascii("sealed", 0.1,
                                             {"#########",
                                              "#...#...#",
                                              "#...#...#",
                                              "#...#...#",
                                              "#########"});
  const auto d =
      geodesic_distance(grid, grid.center_of(2, 2), grid.center_of(6, 2), 0.0);
  CHECK_FALSE(d.has_value());
}

TEST_CASE("geodesic properties on a generated floorplan") {
  FloorplanSpec spec;
  spec.scene_id = "props";
  spec.bounds_width = 8.0;
  spec.bounds_height = 6.0;
  spec.seed = 7;
  const OccupancyGrid grid = generate_floorplan(spec);

  // Collect clearance-admissible cells.
  std::vector<CellIndex> cells;
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (grid.is_free(col, row) &&
          grid.has_clearance(grid.center_of(col, row), 0.2)) {
        cells.push_back(CellIndex{col, row});
      }
    }
  }
  REQUIRE(cells.size() > 50);

  SeededRng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const CellIndex ca = cells[static_cast<std::size_t>(
        rng.uniform_u64(0, cells.size() - 1))];
    const CellIndex cb = cells[static_cast<std::size_t>(
        rng.uniform_u64(0, cells.size() - 1))];
    const Point2D a = grid.center_of(ca);
    const Point2D b = grid.center_of(cb);
    const auto ab = geodesic_distance(grid, a, b, 0.2);
    const auto ba = geodesic_distance(grid, b, a, 0.2);
    REQUIRE(ab.has_value());
    REQUIRE(ba.has_value());
    // Exact symmetry.
    CHECK(*ab == *ba);
    // Lower bound by Euclidean distance minus discretization slack.
    CHECK(*ab >= euclidean(a, b) - 2.0 * grid.resolution());
    // Straight-line traversability bounds the geodesic.
    if (line_traversable(grid, a, b, 0.2)) {
      CHECK(*ab <= euclidean(a, b) + 2.0 * grid.resolution());
    }
  }
}

TEST_CASE("line_traversable trivial cases") {
  const OccupancyGrid grid = open_grid("lines", 3.0, 2.0, 0.1);
  const Point2D mid{1.5, 1.0};
  CHECK(line_traversable(grid, mid, mid, 0.2));
  // Through the boundary wall.
  CHECK_FALSE(line_traversable(grid, mid, Point2D{1.5, 0.05}, 0.1));
  // Out of bounds.
  CHECK_FALSE(line_traversable(grid, mid, Point2D{9.0, 1.0}, 0.1));
}

TEST_CASE("line_traversable agrees with a dense supersampled oracle") {
  FloorplanSpec spec;
  spec.scene_id = "lineoracle";
  spec.bounds_width = 8.0;
  spec.bounds_height = 6.0;
  spec.seed = 7;
  const OccupancyGrid grid = generate_floorplan(spec);
  const double clearance = 0.2;

  // Independent predicate: brute-force scan of every obstacle cell within
  // range of each sample point, spacing resolution/10.
  auto oracle = [&](const Point2D &a, const Point2D &b) {
    const double spacing = grid.resolution() / 10.0;
    const double len = euclidean(a, b);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int i = 0; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      const Point2D p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
      const int window =
          static_cast<int>(std::ceil(clearance / grid.resolution())) + 1;
      const CellIndex cell = grid.cell_of(p);
      if (!grid.is_free(cell.col, cell.row)) {
        return false;
      }
      for (int dr = -window; dr <= window; ++dr) {
        for (int dc = -window; dc <= window; ++dc) {
          const int cc = cell.col + dc;
          const int rr = cell.row + dr;
          if (!grid.in_bounds(cc, rr) || grid.at(cc, rr) != Cell::kObstacle) {
            continue;
          }
          const double x0 = cc * grid.resolution();
          const double y0 = rr * grid.resolution();
          const double dx =
              std::max({x0 - p.x, 0.0, p.x - (x0 + grid.resolution())});
          const double dy =
              std::max({y0 - p.y, 0.0, p.y - (y0 + grid.resolution())});
          if (std::hypot(dx, dy) <= clearance) {
            return false;
          }
        }
      }
    }
    return true;
  };

  SeededRng rng(2024);
  int traversable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Point2D a{rng.uniform_real(0.1, 7.9), rng.uniform_real(0.1, 5.9)};
    const Point2D b{rng.uniform_real(0.1, 7.9), rng.uniform_real(0.1, 5.9)};
    const bool got = line_traversable(grid, a, b, clearance);
    const bool want = oracle(a, b);
    REQUIRE(got == want);
    traversable += got ? 1 : 0;
  }
  // The scene must exercise both outcomes.
  CHECK(traversable > 10);
  CHECK(traversable < 190);
}
