#include "navgen/clustering.hpp"

#include <algorithm>
#include <limits>

#include "navgen/errors.hpp"
#include "navgen/grid_search.hpp"

namespace navgen {

std::vector<std::vector<double>> pairwise_geodesic(
    const OccupancyGrid &grid, const std::vector<Point2D> &points) {
  const std::size_t n = points.size();
  std::vector<CellIndex> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = grid.cell_of(points[i]);
  }
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    FieldOptions options;
    options.targets.assign(cells.begin(), cells.end());
    const DistanceField field = geodesic_field(grid, {cells[i]}, options);
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = field.at(cells[j]);
    }
  }
  // The cell metric is symmetric; enforce it bit-for-bit.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::min(dist[i][j], dist[j][i]);
      dist[i][j] = d;
      dist[j][i] = d;
    }
  }
  return dist;
}

namespace {

// Complete-linkage distance: the largest member-pair distance, so a merged
// cluster never exceeds the threshold in geodesic diameter.
double complete_link(const std::vector<int> &x, const std::vector<int> &y,
                     const std::vector<std::vector<double>> &base) {
  double worst = 0.0;
  for (int a : x) {
    for (int b : y) {
      worst = std::max(
          worst, base[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
  }
  return worst;
}

}  // namespace

std::vector<Viewpoint> cluster_viewpoints(const std::vector<Point2D> &points,
                                          const OccupancyGrid &grid,
                                          double threshold) {
  if (points.empty()) {
    throw DataError("clustering: empty input");
  }
  const std::size_t n = points.size();
  const auto base = pairwise_geodesic(grid, points);

  std::vector<std::vector<int>> members(n);
  std::vector<char> active(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {static_cast<int>(i)};
  }

  // Cached distances between active slots plus a per-slot row minimum over
  // higher slots. Rebuilt lazily after merges.
  constexpr double kInvalid = -1.0;
  std::vector<std::vector<double>> cache(n, std::vector<double>(n, kInvalid));
  auto slot_distance = [&](std::size_t i, std::size_t j) {
    double &slot = cache[i][j];
    if (slot == kInvalid) {
      slot = complete_link(members[i], members[j], base);
    }
    return slot;
  };

  std::size_t active_count = n;
  while (active_count > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) {
        continue;
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) {
          continue;
        }
        const double d = slot_distance(i, j);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (!(best < threshold)) {
      break;
    }
    // Merge slot bj into bi (bi < bj).
    std::vector<int> merged;
    merged.reserve(members[bi].size() + members[bj].size());
    std::merge(members[bi].begin(), members[bi].end(), members[bj].begin(),
               members[bj].end(), std::back_inserter(merged));
    members[bi] = std::move(merged);
    members[bj].clear();
    active[bj] = 0;
    --active_count;
    for (std::size_t k = 0; k < n; ++k) {
      cache[std::min(k, bi)][std::max(k, bi)] = kInvalid;
    }
  }

  struct Cluster {
    int medoid;
    std::vector<int> member_ids;
  };
  std::vector<Cluster> clusters;
  clusters.reserve(active_count);
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) {
      continue;
    }
    const std::vector<int> &m = members[i];
    int medoid = m.front();
    double best = std::numeric_limits<double>::infinity();
    for (int cand : m) {
      double sum = 0.0;
      for (int other : m) {
        if (other != cand) {
          sum += base[static_cast<std::size_t>(cand)]
                     [static_cast<std::size_t>(other)];
        }
      }
      if (sum < best) {
        best = sum;
        medoid = cand;
      }
    }
    clusters.push_back(Cluster{medoid, m});
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster &a, const Cluster &b) { return a.medoid < b.medoid; });

  std::vector<Viewpoint> out;
  out.reserve(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    Viewpoint v;
    v.id = static_cast<int>(i);
    v.position = points[static_cast<std::size_t>(clusters[i].medoid)];
    v.cluster_size = static_cast<int>(clusters[i].member_ids.size());
    out.push_back(v);
  }
  return out;
}

}  // namespace navgen
