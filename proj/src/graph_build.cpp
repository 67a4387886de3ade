#include "navgen/graph_build.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "navgen/errors.hpp"
#include "navgen/grid_search.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"

namespace navgen {

NavGraph build_rough_graph(const std::vector<Viewpoint> &viewpoints,
                           const OccupancyGrid &grid,
                           const GraphBuildParams &params, std::uint64_t seed) {
  if (viewpoints.empty()) {
    throw DataError("rough graph: need at least one viewpoint");
  }
  const int n = static_cast<int>(viewpoints.size());

  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (euclidean(viewpoints[i].position, viewpoints[j].position) <=
          params.max_edge_length) {
        candidates.emplace_back(i, j);
      }
    }
  }
  SeededRng rng(seed);
  rng.shuffle(candidates);

  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<NavEdge> edges;
  for (const auto &[i, j] : candidates) {
    if (degree[i] >= params.max_degree || degree[j] >= params.max_degree) {
      continue;
    }
    if (!line_traversable(grid, viewpoints[i].position, viewpoints[j].position,
                          params.clearance_radius)) {
      continue;
    }
    NavEdge e;
    e.a = i;
    e.b = j;
    e.length = euclidean(viewpoints[i].position, viewpoints[j].position);
    e.origin = EdgeOrigin::kRough;
    edges.push_back(e);
    ++degree[i];
    ++degree[j];
  }
  return NavGraph(grid.scene_id(), viewpoints, std::move(edges));
}

namespace {

std::vector<int> component_labels(const NavGraph &graph, int *count) {
  const int n = graph.node_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  int next = 0;
  for (int start = 0; start < n; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) {
      continue;
    }
    label[static_cast<std::size_t>(start)] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (const auto &[nbr, len] : graph.neighbors(cur)) {
        if (label[static_cast<std::size_t>(nbr)] < 0) {
          label[static_cast<std::size_t>(nbr)] = next;
          stack.push_back(nbr);
        }
      }
    }
    ++next;
  }
  *count = next;
  return label;
}

}  // namespace

NavGraph refine_graph(const NavGraph &rough, const OccupancyGrid &grid,
                      const GraphBuildParams &params) {
  std::vector<Viewpoint> viewpoints = rough.viewpoints();
  std::vector<NavEdge> edges = rough.edges();
  const double clear_margin =
      params.clearance_radius + grid.resolution() * std::numbers::sqrt2 * 0.5;

  // Cell -> viewpoint id, to reuse nodes when paths cross existing ones.
  std::map<std::pair<int, int>, int> cell_to_node;
  for (const Viewpoint &v : viewpoints) {
    const CellIndex c = grid.cell_of(v.position);
    cell_to_node[{c.col, c.row}] = v.id;
  }

  auto rebuild = [&]() {
    return NavGraph(rough.scene_id(), viewpoints, edges);
  };

  while (true) {
    NavGraph current = rebuild();
    int comp_count = 0;
    const std::vector<int> labels = component_labels(current, &comp_count);
    if (comp_count <= 1) {
      return current;
    }

    // Group viewpoint cells per component, ordered by component label (which
    // follows the lowest contained viewpoint id).
    std::vector<std::vector<CellIndex>> comp_cells(
        static_cast<std::size_t>(comp_count));
    std::vector<std::vector<int>> comp_nodes(
        static_cast<std::size_t>(comp_count));
    for (int v = 0; v < current.node_count(); ++v) {
      const int c = labels[static_cast<std::size_t>(v)];
      comp_cells[static_cast<std::size_t>(c)].push_back(
          grid.cell_of(current.position(v)));
      comp_nodes[static_cast<std::size_t>(c)].push_back(v);
    }

    // One clearance-restricted multi-source field per component, then pick
    // the globally closest component pair.
    double best_dist = std::numeric_limits<double>::infinity();
    int best_u = -1;
    int best_v = -1;
    int best_comp = -1;
    std::vector<DistanceField> fields;
    fields.reserve(static_cast<std::size_t>(comp_count));
    for (int c = 0; c < comp_count; ++c) {
      FieldOptions options;
      options.min_center_clearance = clear_margin;
      fields.push_back(
          geodesic_field(grid, comp_cells[static_cast<std::size_t>(c)], options));
    }
    for (int ca = 0; ca < comp_count; ++ca) {
      const DistanceField &field = fields[static_cast<std::size_t>(ca)];
      for (int cb = ca + 1; cb < comp_count; ++cb) {
        for (int v : comp_nodes[static_cast<std::size_t>(cb)]) {
          const CellIndex cell = grid.cell_of(current.position(v));
          const double d = field.at(cell);
          if (d == kUnreachable) {
            continue;
          }
          const int src_idx = field.source_id[static_cast<std::size_t>(
              cell.row * field.width + cell.col)];
          const int u = comp_nodes[static_cast<std::size_t>(ca)]
                                  [static_cast<std::size_t>(src_idx)];
          if (d < best_dist ||
              (d == best_dist &&
               std::pair(std::min(u, v), std::max(u, v)) <
                   std::pair(std::min(best_u, best_v), std::max(best_u, best_v)))) {
            best_dist = d;
            best_u = u;
            best_v = v;
            best_comp = ca;
          }
        }
      }
    }
    if (best_u < 0) {
      int free_comp_count = 0;
      free_components(grid, &free_comp_count);
      throw DataError(
          ErrorCode::kUnfixable,
          free_comp_count > 1
              ? "refinement: FREE space is disconnected"
              : "refinement: no clearance-wide corridor joins the components");
    }

    // Recover the cell path from u to v and straighten it greedily into
    // traversable chords no longer than max_edge_length.
    const DistanceField &field = fields[static_cast<std::size_t>(best_comp)];
    const std::vector<CellIndex> cell_path =
        extract_path(field, grid.cell_of(current.position(best_v)));
    // extract_path walks source -> target where source is on component ca;
    // u is that source viewpoint.
    std::vector<Point2D> waypoints;
    waypoints.push_back(current.position(best_u));
    std::size_t anchor = 0;
    while (anchor + 1 < cell_path.size()) {
      std::size_t far = anchor + 1;
      const Point2D from = waypoints.back();
      for (std::size_t k = cell_path.size() - 1; k > anchor; --k) {
        const Point2D cand = grid.center_of(cell_path[k]);
        if (euclidean(from, cand) <= params.max_edge_length &&
            line_traversable(grid, from, cand, params.clearance_radius)) {
          far = k;
          break;
        }
      }
      waypoints.push_back(grid.center_of(cell_path[far]));
      anchor = far;
    }
    waypoints.back() = current.position(best_v);

    int prev_node = best_u;
    for (std::size_t k = 1; k < waypoints.size(); ++k) {
      int node;
      if (k + 1 == waypoints.size()) {
        node = best_v;
      } else {
        const CellIndex cell = grid.cell_of(waypoints[k]);
        const auto key = std::pair(cell.col, cell.row);
        auto it = cell_to_node.find(key);
        if (it != cell_to_node.end()) {
          node = it->second;
        } else {
          node = static_cast<int>(viewpoints.size());
          viewpoints.push_back(Viewpoint{node, waypoints[k], 0});
          cell_to_node[key] = node;
        }
      }
      if (node == prev_node) {
        continue;
      }
      bool duplicate = false;
      const int ea = std::min(prev_node, node);
      const int eb = std::max(prev_node, node);
      for (const NavEdge &e : edges) {
        if (e.a == ea && e.b == eb) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        NavEdge e;
        e.a = ea;
        e.b = eb;
        e.length = euclidean(viewpoints[static_cast<std::size_t>(ea)].position,
                             viewpoints[static_cast<std::size_t>(eb)].position);
        e.origin = EdgeOrigin::kRefinement;
        edges.push_back(e);
      }
      prev_node = node;
    }
  }
}

GraphQualityReport quality_report(const NavGraph &graph,
                                  const OccupancyGrid &grid,
                                  const GraphBuildParams &params) {
  GraphQualityReport report;
  report.scene_id = graph.scene_id();
  report.navigable_area = grid.navigable_area();
  report.node_count = graph.node_count();
  report.edge_count = graph.edge_count();
  report.component_count = graph.component_count();
  report.density = report.navigable_area > 0.0
                       ? report.node_count / report.navigable_area
                       : 0.0;

  int colliding = 0;
  double length_sum = 0.0;
  for (const NavEdge &e : graph.edges()) {
    if (!line_traversable(grid, graph.position(e.a), graph.position(e.b),
                          params.clearance_radius)) {
      ++colliding;
    }
    length_sum += e.length;
    if (e.origin == EdgeOrigin::kRough) {
      ++report.rough_edge_count;
    } else {
      ++report.refinement_edge_count;
    }
  }
  report.collision_ratio =
      report.edge_count > 0 ? static_cast<double>(colliding) / report.edge_count
                            : 0.0;
  report.mean_edge_length =
      report.edge_count > 0 ? length_sum / report.edge_count : 0.0;
  report.mean_degree =
      report.node_count > 0
          ? 2.0 * report.edge_count / static_cast<double>(report.node_count)
          : 0.0;
  return report;
}

std::string GraphQualityReport::serialize() const {
  std::string out;
  out += "quality v1\n";
  out += "scene " + scene_id + "\n";
  out += "navigable_area " + format_double(navigable_area) + "\n";
  out += "density " + format_double(density) + "\n";
  out += "collision_ratio " + format_double(collision_ratio) + "\n";
  out += "mean_edge_length " + format_double(mean_edge_length) + "\n";
  out += "mean_degree " + format_double(mean_degree) + "\n";
  out += "component_count " + format_int(component_count) + "\n";
  out += "node_count " + format_int(node_count) + "\n";
  out += "edge_count " + format_int(edge_count) + "\n";
  out += "rough_edge_count " + format_int(rough_edge_count) + "\n";
  out += "refinement_edge_count " + format_int(refinement_edge_count) + "\n";
  return out;
}

namespace {

std::string pad(std::string value, std::size_t width) {
  if (value.size() < width) {
    value.insert(0, width - value.size(), ' ');
  }
  return value;
}

std::string fixed2(double value) {
  const double rounded = std::round(value * 100.0) / 100.0;
  std::string text = format_double(rounded);
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    return text + ".00";
  }
  while (text.size() - dot < 3) {
    text += '0';
  }
  return text.substr(0, dot + 3);
}

}  // namespace

std::string GraphQualityReport::table_header() {
  return pad("scene", 12) + pad("density", 10) + pad("collision", 11) +
         pad("mean_edge", 11) + pad("mean_deg", 10) + pad("comps", 7) +
         pad("nodes", 7) + pad("edges", 7);
}

std::string GraphQualityReport::table_row() const {
  return pad(scene_id, 12) + pad(fixed2(density), 10) +
         pad(fixed2(collision_ratio * 100.0) + "%", 11) +
         pad(fixed2(mean_edge_length), 11) + pad(fixed2(mean_degree), 10) +
         pad(format_int(component_count), 7) + pad(format_int(node_count), 7) +
         pad(format_int(edge_count), 7);
}

}  // namespace navgen
