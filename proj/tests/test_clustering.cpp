#include <doctest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "navgen/clustering.hpp"
#include "navgen/errors.hpp"
#include "navgen/floorplan.hpp"
#include "navgen/rng.hpp"
#include "navgen/sampling.hpp"
#include "test_support.hpp"

using namespace navgen;
using namespace navgen::testsupport;

namespace {

// Naive reimplementation of the clustering contract: recompute every
// cluster-pair distance from scratch each round, merge the smallest
// (distance, lower slot, higher slot) while it is strictly below the
// threshold, then pick geodesic medoids with ties to the lowest index.
struct NaiveClusters {
  std::vector<std::vector<int>> members;  // sorted; empty = inactive
  std::vector<int> medoids;
};

NaiveClusters naive_cluster(const std::vector<std::vector<double>> &base,
                            double threshold) {
  const std::size_t n = base.size();
  std::vector<std::vector<int>> members(n);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {static_cast<int>(i)};
  }
  while (true) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (members[i].empty()) {
        continue;
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (members[j].empty()) {
          continue;
        }
        double worst = 0.0;
        for (int a : members[i]) {
          for (int b : members[j]) {
            worst = std::max(worst, base[a][b]);
          }
        }
        if (worst < best) {
          best = worst;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n || !(best < threshold)) {
      break;
    }
    std::vector<int> merged;
    std::merge(members[bi].begin(), members[bi].end(), members[bj].begin(),
               members[bj].end(), std::back_inserter(merged));
    members[bi] = std::move(merged);
    members[bj].clear();
  }

  NaiveClusters out;
  for (std::size_t i = 0; i < n; ++i) {
    if (members[i].empty()) {
      continue;
    }
    int medoid = members[i].front();
    double best = std::numeric_limits<double>::infinity();
    for (int cand : members[i]) {
      double sum = 0.0;
      for (int other : members[i]) {
        if (other != cand) {
          sum += base[cand][other];
        }
      }
      if (sum < best) {
        best = sum;
        medoid = cand;
      }
    }
    out.members.push_back(members[i]);
    out.medoids.push_back(medoid);
  }
  return out;
}

}  // namespace

TEST_CASE("two close points merge to the lower-index medoid") {
  const OccupancyGrid grid = open_grid("pair", 4.0, 4.0, 0.1);
  const std::vector<Point2D> points = {grid.center_of(10, 20),
                                       grid.center_of(15, 20)};  // 0.5 m apart
  const auto viewpoints = cluster_viewpoints(points, grid, 1.0);
  REQUIRE(viewpoints.size() == 1);
  CHECK(viewpoints[0].position == points[0]);  // tie -> lowest input index
  CHECK(viewpoints[0].cluster_size == 2);
}

TEST_CASE("points beyond the threshold stay separate") {
  const OccupancyGrid grid = open_grid("apart", 5.0, 4.0, 0.1);
  const std::vector<Point2D> points = {grid.center_of(5, 20),
                                       grid.center_of(35, 20)};  // 3 m apart
  const auto viewpoints = cluster_viewpoints(points, grid, 1.0);
  REQUIRE(viewpoints.size() == 2);
  CHECK(viewpoints[0].position == points[0]);
  CHECK(viewpoints[1].position == points[1]);
  CHECK(viewpoints[0].id == 0);
  CHECK(viewpoints[1].id == 1);
}

TEST_CASE("clustering rejects empty input") {
  const OccupancyGrid grid = open_grid("empty", 2.0, 2.0, 0.1);
  CHECK_THROWS_AS(cluster_viewpoints({}, grid, 1.0), DataError);
}

TEST_CASE("30 random points match the naive agglomerative oracle") {
  FloorplanSpec spec;
  spec.scene_id = "oracle30";
  spec.bounds_width = 8.0;
  spec.bounds_height = 6.0;
  spec.seed = 7;
  const OccupancyGrid grid = generate_floorplan(spec);
  const auto all_samples =
      sample_navigable_points(grid, SamplingParams{}, 17);
  REQUIRE(all_samples.size() >= 30);
  std::vector<Point2D> points(all_samples.begin(), all_samples.begin() + 30);

  const auto base = pairwise_geodesic(grid, points);
  const NaiveClusters expected = naive_cluster(base, 1.0);
  const auto viewpoints = cluster_viewpoints(points, grid, 1.0);

  REQUIRE(viewpoints.size() == expected.members.size());
  // The library orders clusters by medoid input index; mirror that.
  std::vector<std::size_t> order(expected.members.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return expected.medoids[a] < expected.medoids[b];
  });
  for (std::size_t i = 0; i < viewpoints.size(); ++i) {
    const std::size_t k = order[i];
    CHECK(viewpoints[i].position ==
          points[static_cast<std::size_t>(expected.medoids[k])]);
    CHECK(viewpoints[i].cluster_size ==
          static_cast<int>(expected.members[k].size()));
  }

  // Representatives are a subset of the input points.
  std::set<std::pair<double, double>> input_set;
  for (const Point2D &p : points) {
    input_set.insert({p.x, p.y});
  }
  for (const Viewpoint &v : viewpoints) {
    CHECK(input_set.count({v.position.x, v.position.y}) == 1);
  }
}
