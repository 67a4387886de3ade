#include "navgen/svg_render.hpp"

#include "navgen/textio.hpp"

namespace navgen {

namespace {

constexpr double kScale = 40.0;  // pixels per meter

std::string px(double meters) { return format_double(meters * kScale); }

}  // namespace

std::string render_svg(const OccupancyGrid &grid, const NavGraph *graph,
                       const std::vector<Trajectory> &trajectories) {
  const double res = grid.resolution();
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         px(grid.width() * res) + "\" height=\"" + px(grid.height() * res) +
         "\" viewBox=\"0 0 " + px(grid.width() * res) + " " +
         px(grid.height() * res) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#f8f6f0\"/>\n";

  // Obstacles, merged into horizontal runs per row.
  for (int row = 0; row < grid.height(); ++row) {
    int col = 0;
    while (col < grid.width()) {
      if (grid.at(col, row) != Cell::kObstacle) {
        ++col;
        continue;
      }
      int end = col;
      while (end + 1 < grid.width() && grid.at(end + 1, row) == Cell::kObstacle) {
        ++end;
      }
      svg += "<rect x=\"" + px(col * res) + "\" y=\"" + px(row * res) +
             "\" width=\"" + px((end - col + 1) * res) + "\" height=\"" +
             px(res) + "\" fill=\"#3b3a36\"/>\n";
      col = end + 1;
    }
  }

  if (graph != nullptr) {
    for (const NavEdge &e : graph->edges()) {
      const Point2D &a = graph->position(e.a);
      const Point2D &b = graph->position(e.b);
      const char *cls = e.origin == EdgeOrigin::kRough ? "rough" : "refine";
      const char *color = e.origin == EdgeOrigin::kRough ? "#4477aa" : "#cc6644";
      svg += std::string("<line class=\"") + cls + "\" x1=\"" + px(a.x) +
             "\" y1=\"" + px(a.y) + "\" x2=\"" + px(b.x) + "\" y2=\"" +
             px(b.y) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    }
    for (const Viewpoint &v : graph->viewpoints()) {
      svg += "<circle class=\"viewpoint\" cx=\"" + px(v.position.x) +
             "\" cy=\"" + px(v.position.y) +
             "\" r=\"3\" fill=\"#225522\" stroke=\"#ffffff\" stroke-width=\"0.8\"/>\n";
    }
  }

  for (const Trajectory &traj : trajectories) {
    if (graph == nullptr || traj.node_ids.size() < 2) {
      continue;
    }
    std::string pts;
    for (std::size_t i = 0; i < traj.node_ids.size(); ++i) {
      if (i > 0) {
        pts += ' ';
      }
      const Point2D &p = graph->position(traj.node_ids[i]);
      pts += px(p.x) + "," + px(p.y);
    }
    svg += "<polyline class=\"trajectory\" points=\"" + pts +
           "\" fill=\"none\" stroke=\"#aa2288\" stroke-width=\"2.5\" "
           "stroke-opacity=\"0.7\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void render_svg_file(const std::string &path, const OccupancyGrid &grid,
                     const NavGraph *graph,
                     const std::vector<Trajectory> &trajectories) {
  write_text_file(path, render_svg(grid, graph, trajectories));
}

}  // namespace navgen
