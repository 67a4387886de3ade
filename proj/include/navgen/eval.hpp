#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "navgen/episode.hpp"
#include "navgen/nav_graph.hpp"
#include "navgen/occupancy_grid.hpp"

namespace navgen {

struct AgentRun {
  std::string episode_id;            // hex form of the episode hash
  std::vector<Point2D> visited;      // stop position = last element
  std::optional<int> selected_object;
};

struct EvalResult {
  double tl = 0.0;    // trajectory length, meters
  double ne = 0.0;    // navigation error, meters (geodesic stop -> goal)
  double osr = 0.0;   // oracle success
  double sr = 0.0;    // success
  double spl = 0.0;   // success weighted by path length
  double ndtw = 0.0;
  double gp = 0.0;    // goal progress: geodesic(start,goal) - geodesic(stop,goal)
  double shortest_dist = 0.0;  // geodesic(start, goal), exposed raw
  std::optional<double> rgs;
  std::optional<double> rgspl;
};

// Full metric suite for one run. Geodesics use the grid cell metric with
// FREE endpoints; unreachable or obstacle positions are evaluation failures
// (corrupt episode or run). nDTW normalizes the DTW cost by
// |ground truth| * success_radius.
EvalResult evaluate_run(const Episode &episode, const AgentRun &run,
                        const OccupancyGrid &grid, const NavGraph &graph,
                        double success_radius = 3.0);

// Reference agent that retraces the ground-truth nodes exactly.
AgentRun oracle_follower(const Episode &episode, const NavGraph &graph);

// Degraded reference agent: at each step it diverts to a random neighbour
// with probability p_wrong, then replans to the goal; hard stop after
// 3x the ground-truth node count.
AgentRun noisy_follower(const Episode &episode, const NavGraph &graph,
                        double p_wrong, std::uint64_t seed);

// Arithmetic means per field; optional fields average over the episodes
// that carry them. Rejects empty input.
EvalResult aggregate(std::span<const EvalResult> results);

// Plain DTW total cost between two position sequences under an arbitrary
// pairwise cost; exposed for the evaluation pipeline and its tests.
double dtw_cost(const std::vector<std::vector<double>> &pairwise);

}  // namespace navgen
