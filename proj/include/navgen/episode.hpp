#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "navgen/speaker.hpp"
#include "navgen/trajectory.hpp"

namespace navgen {

enum class Split { kTrain, kValSeen, kValUnseen };

const char *split_name(Split split);
Split split_from_name(std::string_view name);

struct Episode {
  std::uint64_t episode_id = 0;
  Trajectory trajectory;
  InstructionRecord instruction;
  Split split = Split::kTrain;
};

// Stable 64-bit id: FNV-1a over "scene|node,ids|speaker_tag|seed".
std::uint64_t episode_hash(const std::string &scene_id,
                           const std::vector<int> &node_ids,
                           const std::string &speaker_tag, std::uint64_t seed);

Episode make_episode(Trajectory trajectory, InstructionRecord instruction,
                     Split split, std::uint64_t seed);

// Scene-level partition: (train + val-seen scenes, val-unseen scenes).
// Deterministic per seed; requires at least two scenes when ratio > 0.
std::pair<std::vector<std::string>, std::vector<std::string>> split_scenes(
    const std::vector<std::string> &scene_ids, double ratio_unseen,
    std::uint64_t seed);

// Hash-based per-episode holdout inside training scenes, independent of
// processing order.
Split training_scene_split(std::uint64_t episode_id, double ratio_val_seen);

}  // namespace navgen
