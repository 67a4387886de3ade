#pragma once

#include <string>
#include <utility>
#include <vector>

#include "navgen/geometry.hpp"

namespace navgen {

struct Viewpoint {
  int id = 0;
  Point2D position;
  // Raw samples merged into this viewpoint; 0 for nodes inserted during
  // refinement.
  int cluster_size = 1;
};

enum class EdgeOrigin { kRough, kRefinement };

struct NavEdge {
  int a = 0;  // a < b
  int b = 0;
  double length = 0.0;  // Euclidean between endpoint positions
  EdgeOrigin origin = EdgeOrigin::kRough;
};

// Undirected simple graph of viewpoints and traversable edges for one scene.
// Viewpoint ids are dense and equal to their index.
class NavGraph {
public:
  NavGraph(std::string scene_id, std::vector<Viewpoint> viewpoints,
           std::vector<NavEdge> edges);

  const std::string &scene_id() const { return scene_id_; }
  const std::vector<Viewpoint> &viewpoints() const { return viewpoints_; }
  const std::vector<NavEdge> &edges() const { return edges_; }
  int node_count() const { return static_cast<int>(viewpoints_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Point2D &position(int id) const { return viewpoints_[id].position; }

  // Neighbours sorted by id, paired with edge length.
  const std::vector<std::pair<int, double>> &neighbors(int id) const {
    return adjacency_[id];
  }
  int degree(int id) const { return static_cast<int>(adjacency_[id].size()); }
  bool has_edge(int a, int b) const;

  int component_count() const;

  std::string serialize() const;
  static NavGraph parse(const std::string &text);

private:
  std::string scene_id_;
  std::vector<Viewpoint> viewpoints_;
  std::vector<NavEdge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

}  // namespace navgen
