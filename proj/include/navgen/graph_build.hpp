#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgen/nav_graph.hpp"
#include "navgen/occupancy_grid.hpp"

namespace navgen {

struct GraphBuildParams {
  double max_edge_length = 5.0;   // meters, Euclidean candidate radius
  int max_degree = 5;             // cap, ROUGH edges only
  double clearance_radius = 0.2;  // meters, traversability clearance
};

// Candidate pairs are those within max_edge_length (Euclidean) that pass
// line_traversable; they are visited in seeded random order and accepted
// while both endpoints stay below the degree cap. Isolated viewpoints are
// permitted at this stage.
NavGraph build_rough_graph(const std::vector<Viewpoint> &viewpoints,
                           const OccupancyGrid &grid,
                           const GraphBuildParams &params, std::uint64_t seed);

// Connects the graph: repeatedly joins the two components with the smallest
// clearance-restricted geodesic distance between any of their viewpoints,
// inserting intermediate viewpoints along the connecting path so that every
// added edge is straight-line traversable and no longer than
// max_edge_length. Added edges are tagged REFINEMENT and may exceed the
// degree cap. Idempotent on connected graphs. Throws DataError(UNFIXABLE)
// when no traversable connection exists.
NavGraph refine_graph(const NavGraph &rough, const OccupancyGrid &grid,
                      const GraphBuildParams &params);

struct GraphQualityReport {
  std::string scene_id;
  double navigable_area = 0.0;   // m^2
  double density = 0.0;          // nodes per navigable m^2
  double collision_ratio = 0.0;  // recomputed from geometry
  double mean_edge_length = 0.0;
  double mean_degree = 0.0;
  int component_count = 0;
  int node_count = 0;
  int edge_count = 0;
  int rough_edge_count = 0;
  int refinement_edge_count = 0;

  std::string serialize() const;
  // Fixed-column table, one scene per row; `header` selects the column line.
  static std::string table_header();
  std::string table_row() const;
};

GraphQualityReport quality_report(const NavGraph &graph,
                                  const OccupancyGrid &grid,
                                  const GraphBuildParams &params);

}  // namespace navgen
