#pragma once

#include <string>
#include <vector>

#include "navgen/nav_graph.hpp"
#include "navgen/occupancy_grid.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

// Static vector image of a scene: obstacle rectangles, graph edges coloured
// by origin, viewpoint markers as circles and optional highlighted
// trajectories as polylines. Output bytes are deterministic.
std::string render_svg(const OccupancyGrid &grid, const NavGraph *graph,
                       const std::vector<Trajectory> &trajectories = {});

void render_svg_file(const std::string &path, const OccupancyGrid &grid,
                     const NavGraph *graph,
                     const std::vector<Trajectory> &trajectories = {});

}  // namespace navgen
