#include <doctest.h>

#include <algorithm>
#include <set>

#include "navgen/errors.hpp"
#include "navgen/floorplan.hpp"
#include "navgen/grid_search.hpp"
#include "navgen/occupancy_grid.hpp"
#include "navgen/rng.hpp"
#include "navgen/sampling.hpp"
#include "test_support.hpp"

using namespace navgen;
using namespace navgen::testsupport;

TEST_CASE("grid rejects open boundaries and bad payloads") {
  CHECK_THROWS_AS(grid_from_ascii("bad", 0.1, {"...", "...", "..."}), DataError);
  CHECK_THROWS_AS(OccupancyGrid("x", 2, 2, 0.1,
                                std::vector<Cell>(4, Cell::kObstacle)),
                  DataError);
  CHECK_THROWS_AS(OccupancyGrid("has space", 3, 3, 0.1,
                                std::vector<Cell>(9, Cell::kObstacle)),
                  DataError);
}

TEST_CASE("navigable_area counts free cells exactly") {
  // 10x10 free interior at 0.1 m -> 1 m^2.
  const OccupancyGrid grid = open_grid("area", 1.0, 1.0, 0.1);
  CHECK(grid.navigable_area() == doctest::Approx(1.0).epsilon(1e-12));

  const OccupancyGrid solid = grid_from_ascii("solid", 0.1, {"###", "###", "###"});
  CHECK(solid.navigable_area() == 0.0);
}

TEST_CASE("grid serialization round trips losslessly") {
  const OccupancyGrid grid = grid_from_ascii("round-trip", 0.25,
                                             {"#####",
                                              "#..##",
                                              "#.#.#",
                                              "##..#",
                                              "#####"});
  const std::string text = grid.serialize();
  const OccupancyGrid back = OccupancyGrid::parse(text);
  CHECK(back.scene_id() == grid.scene_id());
  CHECK(back.width() == grid.width());
  CHECK(back.height() == grid.height());
  CHECK(back.resolution() == grid.resolution());
  CHECK(back.serialize() == text);

  CHECK_THROWS_WITH_AS(OccupancyGrid::parse("gridmap v9\n"),
                       doctest::Contains("gridmap v1"), DataError);
}

TEST_CASE("floorplans are bit-identical per seed") {
  FloorplanSpec spec;
  spec.scene_id = "det";
  spec.seed = 1;
  const OccupancyGrid a = generate_floorplan(spec);
  const OccupancyGrid b = generate_floorplan(spec);
  CHECK(a.serialize() == b.serialize());

  spec.seed = 2;
  CHECK(generate_floorplan(spec).serialize() != a.serialize());
}

TEST_CASE("zero obstacle density gives the full inner rectangle") {
  FloorplanSpec spec;
  spec.scene_id = "open";
  spec.bounds_width = 6.0;
  spec.bounds_height = 4.0;
  spec.obstacle_density = 0.0;
  spec.seed = 3;
  const OccupancyGrid grid = generate_floorplan(spec);
  const double inner =
      (grid.width() - 2) * (grid.height() - 2) * grid.resolution() *
      grid.resolution();
  CHECK(grid.navigable_area() == doctest::Approx(inner).epsilon(1e-12));
  for (int row = 1; row < grid.height() - 1; ++row) {
    for (int col = 1; col < grid.width() - 1; ++col) {
      REQUIRE(grid.is_free(col, row));
    }
  }
}

TEST_CASE("generated floorplans have one free component (flood-fill oracle)") {
  FloorplanSpec spec;
  spec.scene_id = "seed7";
  spec.bounds_width = 12.0;
  spec.bounds_height = 10.0;  // 120 m^2 bounds
  spec.seed = 7;
  const OccupancyGrid grid = generate_floorplan(spec);
  int components = 0;
  free_components(grid, &components);
  CHECK(components == 1);

  // Area lands within +-20% of interior * (1 - density).
  const double interior =
      (grid.width() - 2) * (grid.height() - 2) * grid.resolution() *
      grid.resolution();
  const double target = interior * (1.0 - spec.obstacle_density);
  CHECK(grid.navigable_area() >= 0.8 * target);
  CHECK(grid.navigable_area() <= 1.2 * target);
}

TEST_CASE("unsatisfiable floorplan specs report the retry budget") {
  FloorplanSpec spec;
  spec.scene_id = "impossible";
  spec.bounds_width = 3.0;
  spec.bounds_height = 3.0;
  spec.room_count_min = 32;  // cannot fit 32 rooms into 3x3 m
  spec.room_count_max = 64;
  spec.seed = 1;
  CHECK_THROWS_WITH_AS(generate_floorplan(spec), doctest::Contains("retries"),
                       DataError);
}

TEST_CASE("invalid floorplan specs are config errors") {
  FloorplanSpec spec;
  spec.corridor_width_min = 0.3;  // below 2 * clearance
  CHECK_THROWS_AS(generate_floorplan(spec), ConfigError);
}

TEST_CASE("sampler: a 0.5 m square admits exactly one point") {
  // 0.5 x 0.5 m free region: only the center cell keeps 0.2 m clearance.
  const OccupancyGrid grid = open_grid("tiny", 0.5, 0.5, 0.1);
  SamplingParams params;
  const auto points = sample_navigable_points(grid, params, 11);
  REQUIRE(points.size() == 1);
  CHECK(points[0].x == doctest::Approx(0.35));
  CHECK(points[0].y == doctest::Approx(0.35));
}

TEST_CASE("sampler output satisfies the separation floor (all-pairs oracle)") {
  FloorplanSpec spec;
  spec.scene_id = "sep";
  spec.bounds_width = 8.0;
  spec.bounds_height = 6.0;
  spec.seed = 7;
  const OccupancyGrid grid = generate_floorplan(spec);
  SamplingParams params;
  const auto points = sample_navigable_points(grid, params, 3);
  REQUIRE(points.size() > 10);

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto dist = relaxation_distances(grid, grid.cell_of(points[i]));
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const CellIndex c = grid.cell_of(points[j]);
      const double d = dist[static_cast<std::size_t>(c.row) * grid.width() + c.col];
      REQUIRE(d > params.min_geodesic_separation);
    }
    // Every point is free with clearance.
    REQUIRE(grid.has_clearance(points[i], params.clearance_radius));
  }

  // Determinism per seed.
  const auto again = sample_navigable_points(grid, params, 3);
  REQUIRE(points.size() == again.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i] == again[i]);
  }
}
