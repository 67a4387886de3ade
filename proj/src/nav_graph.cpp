#include "navgen/nav_graph.hpp"

#include <algorithm>

#include "navgen/errors.hpp"
#include "navgen/textio.hpp"

namespace navgen {

NavGraph::NavGraph(std::string scene_id, std::vector<Viewpoint> viewpoints,
                   std::vector<NavEdge> edges)
    : scene_id_(std::move(scene_id)),
      viewpoints_(std::move(viewpoints)),
      edges_(std::move(edges)) {
  const int n = static_cast<int>(viewpoints_.size());
  for (int i = 0; i < n; ++i) {
    if (viewpoints_[static_cast<std::size_t>(i)].id != i) {
      throw DataError("viewpoint ids must be dense and contiguous");
    }
  }
  for (NavEdge &e : edges_) {
    if (e.a > e.b) {
      std::swap(e.a, e.b);
    }
    if (e.a == e.b) {
      throw DataError("self-loop edge on viewpoint " + format_int(e.a));
    }
    if (e.a < 0 || e.b >= n) {
      throw DataError("edge endpoint out of range");
    }
    if (!(e.length > 0.0)) {
      throw DataError("edge length must be positive");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const NavEdge &x, const NavEdge &y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b) {
      throw DataError("duplicate edge " + format_int(edges_[i].a) + "-" +
                      format_int(edges_[i].b));
    }
  }
  adjacency_.resize(static_cast<std::size_t>(n));
  for (const NavEdge &e : edges_) {
    adjacency_[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.length);
    adjacency_[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.length);
  }
  for (auto &nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
}

bool NavGraph::has_edge(int a, int b) const {
  if (a > b) {
    std::swap(a, b);
  }
  const auto &nbrs = adjacency_[static_cast<std::size_t>(a)];
  return std::any_of(nbrs.begin(), nbrs.end(),
                     [&](const auto &p) { return p.first == b; });
}

int NavGraph::component_count() const {
  const int n = node_count();
  if (n == 0) {
    return 0;
  }
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  int count = 0;
  for (int start = 0; start < n; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) {
      continue;
    }
    label[static_cast<std::size_t>(start)] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (const auto &[nbr, len] : neighbors(cur)) {
        if (label[static_cast<std::size_t>(nbr)] < 0) {
          label[static_cast<std::size_t>(nbr)] = count;
          stack.push_back(nbr);
        }
      }
    }
    ++count;
  }
  return count;
}

std::string NavGraph::serialize() const {
  std::string out;
  out += "navgraph v1\n";
  out += "scene " + scene_id_ + "\n";
  out += "nodes " + format_int(node_count()) + "\n";
  for (const Viewpoint &v : viewpoints_) {
    out += "node " + format_int(v.id) + " " + format_double(v.position.x) +
           " " + format_double(v.position.y) + " " +
           format_int(v.cluster_size) + "\n";
  }
  out += "edges " + format_int(edge_count()) + "\n";
  for (const NavEdge &e : edges_) {
    out += "edge " + format_int(e.a) + " " + format_int(e.b) + " " +
           format_double(e.length) + " " +
           (e.origin == EdgeOrigin::kRough ? "rough" : "refine") + "\n";
  }
  return out;
}

NavGraph NavGraph::parse(const std::string &text) {
  const auto lines = split_char(text, '\n');
  std::size_t i = 0;
  auto next_line = [&]() -> std::string_view {
    if (i >= lines.size()) {
      throw DataError(ErrorCode::kTruncated, "graph file: unexpected end");
    }
    return lines[i++];
  };
  if (next_line() != "navgraph v1") {
    throw DataError(ErrorCode::kVersionMismatch,
                    "graph file: expected 'navgraph v1' header");
  }
  auto scene_parts = split_ws(next_line());
  if (scene_parts.size() != 2 || scene_parts[0] != "scene") {
    throw DataError("graph file: malformed scene line");
  }
  auto nodes_parts = split_ws(next_line());
  if (nodes_parts.size() != 2 || nodes_parts[0] != "nodes") {
    throw DataError("graph file: malformed nodes line");
  }
  const long long n = parse_int(nodes_parts[1], "node count");
  std::vector<Viewpoint> viewpoints;
  viewpoints.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    auto parts = split_ws(next_line());
    if (parts.size() != 5 || parts[0] != "node") {
      throw DataError("graph file: malformed node line");
    }
    Viewpoint v;
    v.id = static_cast<int>(parse_int(parts[1], "node id"));
    v.position.x = parse_double(parts[2], "node x");
    v.position.y = parse_double(parts[3], "node y");
    v.cluster_size = static_cast<int>(parse_int(parts[4], "cluster size"));
    viewpoints.push_back(v);
  }
  auto edges_parts = split_ws(next_line());
  if (edges_parts.size() != 2 || edges_parts[0] != "edges") {
    throw DataError("graph file: malformed edges line");
  }
  const long long m = parse_int(edges_parts[1], "edge count");
  std::vector<NavEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    auto parts = split_ws(next_line());
    if (parts.size() != 5 || parts[0] != "edge") {
      throw DataError("graph file: malformed edge line");
    }
    NavEdge e;
    e.a = static_cast<int>(parse_int(parts[1], "edge endpoint"));
    e.b = static_cast<int>(parse_int(parts[2], "edge endpoint"));
    e.length = parse_double(parts[3], "edge length");
    if (parts[4] == "rough") {
      e.origin = EdgeOrigin::kRough;
    } else if (parts[4] == "refine") {
      e.origin = EdgeOrigin::kRefinement;
    } else {
      throw DataError("graph file: unknown edge origin");
    }
    edges.push_back(e);
  }
  return NavGraph(std::string(scene_parts[1]), std::move(viewpoints),
                  std::move(edges));
}

}  // namespace navgen
