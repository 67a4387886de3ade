#include "navgen/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>
#include <vector>

#include "navgen/errors.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"

namespace navgen {

namespace {

constexpr int kMaxAttempts = 24;
constexpr double kAreaTolerance = 0.2;

double point_to_cell_distance(double px, double py, int col, int row,
                              double res) {
  const double x0 = col * res;
  const double y0 = row * res;
  const double dx = std::max({x0 - px, 0.0, px - (x0 + res)});
  const double dy = std::max({y0 - py, 0.0, py - (y0 + res)});
  return std::hypot(dx, dy);
}

// Work in progress raster plus an incrementally maintained capped clearance
// field (distance from each free cell center to the nearest obstacle cell).
struct Canvas {
  int w = 0;
  int h = 0;
  double res = 0.0;
  double cap = 0.0;
  int window = 0;
  std::vector<std::uint8_t> occ;   // 1 = obstacle
  std::vector<double> clearance;

  bool occupied(int col, int row) const {
    return occ[static_cast<std::size_t>(row) * w + col] != 0;
  }
  void set(int col, int row, std::uint8_t value) {
    occ[static_cast<std::size_t>(row) * w + col] = value;
  }

  void fill_rect(int c0, int r0, int c1, int r1, std::uint8_t value) {
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        set(c, r, value);
      }
    }
  }

  void recompute_clearance(int c0, int r0, int c1, int r1) {
    c0 = std::max(0, c0);
    r0 = std::max(0, r0);
    c1 = std::min(w - 1, c1);
    r1 = std::min(h - 1, r1);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const std::size_t idx = static_cast<std::size_t>(r) * w + c;
        if (occupied(c, r)) {
          clearance[idx] = 0.0;
          continue;
        }
        const double px = (c + 0.5) * res;
        const double py = (r + 0.5) * res;
        double best = cap + res;
        const int rr0 = std::max(0, r - window);
        const int rr1 = std::min(h - 1, r + window);
        const int cc0 = std::max(0, c - window);
        const int cc1 = std::min(w - 1, c + window);
        for (int rr = rr0; rr <= rr1; ++rr) {
          for (int cc = cc0; cc <= cc1; ++cc) {
            if (occupied(cc, rr)) {
              best = std::min(best,
                              point_to_cell_distance(px, py, cc, rr, res));
            }
          }
        }
        clearance[idx] = best;
      }
    }
  }

  void init_clearance() {
    clearance.assign(occ.size(), 0.0);
    recompute_clearance(0, 0, w - 1, h - 1);
  }

  // Single connected component check over cells passing `mask`, with the
  // no-corner-cutting diagonal rule.
  bool single_component(auto &&mask) const {
    std::size_t total = 0;
    int start_c = -1;
    int start_r = -1;
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        if (mask(c, r)) {
          ++total;
          if (start_c < 0) {
            start_c = c;
            start_r = r;
          }
        }
      }
    }
    if (total == 0) {
      return false;
    }
    std::vector<char> seen(occ.size(), 0);
    std::deque<std::pair<int, int>> queue;
    seen[static_cast<std::size_t>(start_r) * w + start_c] = 1;
    queue.emplace_back(start_c, start_r);
    std::size_t reached = 1;
    while (!queue.empty()) {
      auto [c, r] = queue.front();
      queue.pop_front();
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) {
            continue;
          }
          const int nc = c + dc;
          const int nr = r + dr;
          if (nc < 0 || nc >= w || nr < 0 || nr >= h || !mask(nc, nr)) {
            continue;
          }
          if (dr != 0 && dc != 0 && (!mask(c + dc, r) || !mask(c, r + dr))) {
            continue;
          }
          const std::size_t nidx = static_cast<std::size_t>(nr) * w + nc;
          if (!seen[nidx]) {
            seen[nidx] = 1;
            ++reached;
            queue.emplace_back(nc, nr);
          }
        }
      }
    }
    return reached == total;
  }
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) {
      parent[i] = i;
    }
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    parent[b] = a;
    return true;
  }
};

struct Layout {
  int kx = 0;
  int ky = 0;
  std::vector<int> sx0, sx1, sy0, sy1;  // slot extents, inclusive
  long long wall_cells = 0;
};

std::optional<Layout> choose_layout(int w, int h, int t, int rooms_min,
                                    int rooms_max, int min_slot,
                                    long long obstacle_target,
                                    SeededRng &rng) {
  struct Candidate {
    int kx, ky;
    double score;
  };
  std::vector<Candidate> feasible;
  for (int kx = 1; kx <= rooms_max; ++kx) {
    for (int ky = 1; ky <= rooms_max; ++ky) {
      const int rooms = kx * ky;
      if (rooms < rooms_min || rooms > rooms_max) {
        continue;
      }
      const int iw = w - 2;
      const int ih = h - 2;
      const int slot_w = (iw - (kx - 1) * t) / kx;
      const int slot_h = (ih - (ky - 1) * t) / ky;
      if (slot_w < min_slot || slot_h < min_slot) {
        continue;
      }
      const long long walls =
          static_cast<long long>(t) * ((kx - 1) * ih + (ky - 1) * iw);
      if (walls > obstacle_target + obstacle_target / 10) {
        continue;
      }
      const double score = std::abs(static_cast<double>(slot_w) - slot_h);
      feasible.push_back(Candidate{kx, ky, score});
    }
  }
  if (feasible.empty()) {
    return std::nullopt;
  }
  std::sort(feasible.begin(), feasible.end(), [](const auto &a, const auto &b) {
    if (a.score != b.score) {
      return a.score < b.score;
    }
    if (a.kx != b.kx) {
      return a.kx < b.kx;
    }
    return a.ky < b.ky;
  });
  // Pick among the best few so different seeds vary the layout.
  const std::size_t pool = std::min<std::size_t>(feasible.size(), 3);
  const Candidate pick =
      feasible[static_cast<std::size_t>(rng.uniform_u64(0, pool - 1))];

  Layout layout;
  layout.kx = pick.kx;
  layout.ky = pick.ky;
  const int iw = w - 2;
  const int ih = h - 2;
  auto split = [&](int total, int k, std::vector<int> &lo, std::vector<int> &hi) {
    const int usable = total - (k - 1) * t;
    const int base = usable / k;
    const int rem = usable % k;
    int cursor = 1;
    for (int i = 0; i < k; ++i) {
      const int size = base + (i < rem ? 1 : 0);
      lo.push_back(cursor);
      hi.push_back(cursor + size - 1);
      cursor += size + t;
    }
  };
  split(iw, layout.kx, layout.sx0, layout.sx1);
  split(ih, layout.ky, layout.sy0, layout.sy1);
  return layout;
}

struct BuildFailure {
  std::string reason;
};

std::optional<OccupancyGrid> try_build(const FloorplanSpec &spec,
                                       std::uint64_t attempt_seed,
                                       BuildFailure *failure) {
  SeededRng rng(attempt_seed);
  const double res = spec.resolution;
  const int w = static_cast<int>(std::llround(spec.bounds_width / res));
  const int h = static_cast<int>(std::llround(spec.bounds_height / res));
  if (w < 5 || h < 5) {
    failure->reason = "bounds too small for resolution";
    return std::nullopt;
  }

  Canvas canvas;
  canvas.w = w;
  canvas.h = h;
  canvas.res = res;
  canvas.cap = 0.5;
  canvas.window = static_cast<int>(std::ceil(canvas.cap / res)) + 1;
  canvas.occ.assign(static_cast<std::size_t>(w) * h, 0);
  canvas.fill_rect(0, 0, w - 1, 0, 1);
  canvas.fill_rect(0, h - 1, w - 1, h - 1, 1);
  canvas.fill_rect(0, 0, 0, h - 1, 1);
  canvas.fill_rect(w - 1, 0, w - 1, h - 1, 1);

  const long long interior =
      static_cast<long long>(w - 2) * static_cast<long long>(h - 2);
  const long long obstacle_target =
      std::llround(spec.obstacle_density * static_cast<double>(interior));
  const double clear_margin =
      spec.clearance_radius + res * std::numbers::sqrt2 * 0.5;

  auto finish = [&]() -> std::optional<OccupancyGrid> {
    long long obstacles = 0;
    for (int r = 1; r < h - 1; ++r) {
      for (int c = 1; c < w - 1; ++c) {
        obstacles += canvas.occupied(c, r) ? 1 : 0;
      }
    }
    const long long free_cells = interior - obstacles;
    const double target_free = static_cast<double>(interior - obstacle_target);
    if (std::abs(static_cast<double>(free_cells) - target_free) >
        kAreaTolerance * target_free) {
      failure->reason = "navigable area outside tolerance band";
      return std::nullopt;
    }
    auto free_mask = [&](int c, int r) { return !canvas.occupied(c, r); };
    if (!canvas.single_component(free_mask)) {
      failure->reason = "free space not connected";
      return std::nullopt;
    }
    auto clear_mask = [&](int c, int r) {
      return !canvas.occupied(c, r) &&
             canvas.clearance[static_cast<std::size_t>(r) * w + c] >
                 clear_margin;
    };
    if (!canvas.single_component(clear_mask)) {
      failure->reason = "clearance corridor not connected";
      return std::nullopt;
    }
    std::vector<Cell> cells(canvas.occ.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      cells[i] = canvas.occ[i] ? Cell::kObstacle : Cell::kFree;
    }
    return OccupancyGrid(spec.scene_id, w, h, res, std::move(cells));
  };

  if (spec.obstacle_density <= 0.0) {
    canvas.init_clearance();
    return finish();
  }

  const int t = std::max(1, static_cast<int>(std::llround(0.2 / res)));
  // Minimum doorway cells so that a strip of cell centers inside the opening
  // keeps clearance above the sampling margin.
  const int door_min =
      static_cast<int>(std::ceil(2.0 * (clear_margin + res) / res)) + 1;
  const int min_slot = std::max(door_min + 2, 6);

  auto layout = choose_layout(w, h, t, spec.room_count_min,
                              spec.room_count_max, min_slot, obstacle_target,
                              rng);
  if (!layout) {
    failure->reason = "no room layout fits bounds and obstacle density";
    return std::nullopt;
  }

  // Interior walls on the slot boundaries.
  for (int i = 0; i + 1 < layout->kx; ++i) {
    canvas.fill_rect(layout->sx1[i] + 1, 1, layout->sx0[i + 1] - 1, h - 2, 1);
  }
  for (int j = 0; j + 1 < layout->ky; ++j) {
    canvas.fill_rect(1, layout->sy1[j] + 1, w - 2, layout->sy0[j + 1] - 1, 1);
  }

  // Doorways: spanning tree over the room lattice plus a few extra openings.
  struct Adjacency {
    int a, b;
    bool horizontal;  // rooms side by side (door in a vertical wall)
    int ai, aj;
  };
  std::vector<Adjacency> adj;
  auto room_index = [&](int i, int j) { return j * layout->kx + i; };
  for (int j = 0; j < layout->ky; ++j) {
    for (int i = 0; i < layout->kx; ++i) {
      if (i + 1 < layout->kx) {
        adj.push_back({room_index(i, j), room_index(i + 1, j), true, i, j});
      }
      if (j + 1 < layout->ky) {
        adj.push_back({room_index(i, j), room_index(i, j + 1), false, i, j});
      }
    }
  }
  rng.shuffle(adj);
  UnionFind uf(layout->kx * layout->ky);

  auto carve_door = [&](const Adjacency &edge) -> bool {
    const int span_lo = edge.horizontal ? layout->sy0[edge.aj] : layout->sx0[edge.ai];
    const int span_hi = edge.horizontal ? layout->sy1[edge.aj] : layout->sx1[edge.ai];
    const int span = span_hi - span_lo + 1;
    int k = static_cast<int>(std::llround(
        rng.uniform_real(spec.corridor_width_min, spec.corridor_width_max) /
        res));
    k = std::clamp(k, door_min, span - 2);
    if (k < door_min) {
      return false;
    }
    const int offset = span_lo + 1 + rng.uniform_int(0, span - k - 2);
    if (edge.horizontal) {
      canvas.fill_rect(layout->sx1[edge.ai] + 1, offset,
                       layout->sx0[edge.ai + 1] - 1, offset + k - 1, 0);
    } else {
      canvas.fill_rect(offset, layout->sy1[edge.aj] + 1, offset + k - 1,
                       layout->sy0[edge.aj + 1] - 1, 0);
    }
    return true;
  };

  for (const Adjacency &edge : adj) {
    if (uf.unite(edge.a, edge.b)) {
      if (!carve_door(edge)) {
        failure->reason = "doorway does not fit in shared wall";
        return std::nullopt;
      }
    } else if (rng.uniform_real() < 0.35) {
      carve_door(edge);
    }
  }

  canvas.init_clearance();

  // Clutter: rectangular obstacles placed only where both the FREE region
  // and the clearance corridor stay connected.
  long long wall_obstacles = 0;
  for (int r = 1; r < h - 1; ++r) {
    for (int c = 1; c < w - 1; ++c) {
      wall_obstacles += canvas.occupied(c, r) ? 1 : 0;
    }
  }
  long long clutter_needed = obstacle_target - wall_obstacles;
  // Chunky clutter: large rectangles carry less clearance shadow per
  // covered cell than scattered small ones.
  const int rect_min = std::max(2, static_cast<int>(std::llround(0.4 / res)));
  const int rect_max = std::max(rect_min, static_cast<int>(std::llround(1.2 / res)));
  long long placed = 0;
  const long long budget =
      120 + 24 * std::max<long long>(0, clutter_needed) /
                (static_cast<long long>(rect_min) * rect_max);
  auto free_mask = [&](int c, int r) { return !canvas.occupied(c, r); };
  auto clear_mask = [&](int c, int r) {
    return !canvas.occupied(c, r) &&
           canvas.clearance[static_cast<std::size_t>(r) * w + c] > clear_margin;
  };
  for (long long attempt = 0; attempt < budget && placed < clutter_needed;
       ++attempt) {
    const int rw = rng.uniform_int(rect_min, rect_max);
    const int rh = rng.uniform_int(rect_min, rect_max);
    const int c0 = rng.uniform_int(1, w - 1 - rw);
    const int r0 = rng.uniform_int(1, h - 1 - rh);
    bool blocked = false;
    for (int r = r0; r < r0 + rh && !blocked; ++r) {
      for (int c = c0; c < c0 + rw && !blocked; ++c) {
        blocked = canvas.occupied(c, r);
      }
    }
    if (blocked) {
      continue;
    }
    // Snapshot the clearance patch, place, and revert when it disconnects.
    const int pad = canvas.window + 1;
    const int pc0 = std::max(0, c0 - pad);
    const int pr0 = std::max(0, r0 - pad);
    const int pc1 = std::min(w - 1, c0 + rw - 1 + pad);
    const int pr1 = std::min(h - 1, r0 + rh - 1 + pad);
    std::vector<double> patch;
    patch.reserve(static_cast<std::size_t>(pr1 - pr0 + 1) * (pc1 - pc0 + 1));
    for (int r = pr0; r <= pr1; ++r) {
      for (int c = pc0; c <= pc1; ++c) {
        patch.push_back(canvas.clearance[static_cast<std::size_t>(r) * w + c]);
      }
    }
    canvas.fill_rect(c0, r0, c0 + rw - 1, r0 + rh - 1, 1);
    canvas.recompute_clearance(pc0, pr0, pc1, pr1);
    if (canvas.single_component(free_mask) &&
        canvas.single_component(clear_mask)) {
      placed += static_cast<long long>(rw) * rh;
      continue;
    }
    canvas.fill_rect(c0, r0, c0 + rw - 1, r0 + rh - 1, 0);
    std::size_t p = 0;
    for (int r = pr0; r <= pr1; ++r) {
      for (int c = pc0; c <= pc1; ++c) {
        canvas.clearance[static_cast<std::size_t>(r) * w + c] = patch[p++];
      }
    }
  }

  return finish();
}

}  // namespace

void validate_floorplan_spec(const FloorplanSpec &spec) {
  auto fail = [](const std::string &msg) { throw ConfigError("floorplan spec: " + msg); };
  if (spec.scene_id.empty() ||
      spec.scene_id.find_first_of(" \t\r\n") != std::string::npos) {
    fail("scene_id must be non-empty without whitespace");
  }
  if (!(spec.resolution >= 0.02 && spec.resolution <= 0.5)) {
    fail("resolution must be in [0.02, 0.5]");
  }
  if (!(spec.bounds_width >= 3.0 && spec.bounds_width <= 200.0) ||
      !(spec.bounds_height >= 3.0 && spec.bounds_height <= 200.0)) {
    fail("bounds must be in [3, 200] meters");
  }
  if (spec.room_count_min < 1 || spec.room_count_max > 64 ||
      spec.room_count_min > spec.room_count_max) {
    fail("room count range must satisfy 1 <= min <= max <= 64");
  }
  if (!(spec.clearance_radius >= 0.0 && spec.clearance_radius <= 0.4)) {
    fail("clearance radius must be in [0, 0.4]");
  }
  if (!(spec.corridor_width_min >= 2.0 * spec.clearance_radius)) {
    fail("corridor width must be at least twice the clearance radius");
  }
  if (spec.corridor_width_min > spec.corridor_width_max) {
    fail("corridor width range inverted");
  }
  if (!(spec.obstacle_density >= 0.0 && spec.obstacle_density <= 0.45)) {
    fail("obstacle density must be in [0, 0.45]");
  }
}

OccupancyGrid generate_floorplan(const FloorplanSpec &spec) {
  validate_floorplan_spec(spec);
  BuildFailure failure{"no attempt made"};
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto grid =
        try_build(spec, derive_seed(spec.seed, "floorplan", attempt), &failure);
    if (grid) {
      return std::move(*grid);
    }
  }
  throw DataError("floorplan generation for scene " + spec.scene_id +
                  " failed after " + format_int(kMaxAttempts) +
                  " retries: " + failure.reason);
}

}  // namespace navgen
