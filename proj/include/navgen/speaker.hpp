#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgen/nav_graph.hpp"
#include "navgen/objects.hpp"
#include "navgen/occupancy_grid.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

struct InstructionRecord {
  std::vector<std::string> tokens;  // lowercased words
  std::string speaker_tag = "template-v1";

  std::string text() const;
};

enum class TurnClass { kStraight, kLeft, kRight, kAround };

struct SpeakerParams {
  // Heading-change bands, degrees: |d| <= straight_band is straight,
  // anything past around_band is a turn-around, left/right in between.
  double straight_band_deg = 30.0;
  double around_band_deg = 135.0;
};

// Geometric turn classification for each interior node of the route.
std::vector<TurnClass> classify_turns(const NavGraph &graph,
                                      const Trajectory &trajectory,
                                      const SpeakerParams &params);

// Deterministic template speaker. The text is one clause per heading change
// plus start/stop clauses; phrasing varies with the seed, while the multiset
// of directional tokens always matches the geometric turn classification.
// Nearby object labels are mentioned when annotations provide them. Rejects
// routes with fewer than two nodes.
InstructionRecord generate_instruction(const OccupancyGrid &grid,
                                       const NavGraph &graph,
                                       const Trajectory &trajectory,
                                       const std::vector<ObjectAnnotation> &objects,
                                       std::uint64_t seed,
                                       const SpeakerParams &params = {});

}  // namespace navgen
