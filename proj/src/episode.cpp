#include "navgen/episode.hpp"

#include <algorithm>

#include "navgen/errors.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"

namespace navgen {

const char *split_name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValSeen: return "val_seen";
    case Split::kValUnseen: return "val_unseen";
  }
  return "train";
}

Split split_from_name(std::string_view name) {
  if (name == "train") {
    return Split::kTrain;
  }
  if (name == "val_seen") {
    return Split::kValSeen;
  }
  if (name == "val_unseen") {
    return Split::kValUnseen;
  }
  throw DataError("unknown split name: '" + std::string(name) + "'");
}

std::uint64_t episode_hash(const std::string &scene_id,
                           const std::vector<int> &node_ids,
                           const std::string &speaker_tag, std::uint64_t seed) {
  std::string key = scene_id;
  key += '|';
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    if (i > 0) {
      key += ',';
    }
    key += format_int(node_ids[i]);
  }
  key += '|';
  key += speaker_tag;
  key += '|';
  key += format_int(static_cast<long long>(seed));
  return fnv1a64(key);
}

Episode make_episode(Trajectory trajectory, InstructionRecord instruction,
                     Split split, std::uint64_t seed) {
  if (instruction.tokens.empty()) {
    throw DataError("episode: empty instruction");
  }
  Episode episode;
  episode.episode_id = episode_hash(trajectory.scene_id, trajectory.node_ids,
                                    instruction.speaker_tag, seed);
  episode.trajectory = std::move(trajectory);
  episode.instruction = std::move(instruction);
  episode.split = split;
  return episode;
}

std::pair<std::vector<std::string>, std::vector<std::string>> split_scenes(
    const std::vector<std::string> &scene_ids, double ratio_unseen,
    std::uint64_t seed) {
  if (!(ratio_unseen > 0.0 && ratio_unseen < 1.0)) {
    throw ConfigError("split: ratio_unseen must lie in (0, 1)");
  }
  if (scene_ids.size() < 2) {
    throw DataError("split: need at least two scenes for an unseen split");
  }
  std::vector<std::string> shuffled = scene_ids;
  std::sort(shuffled.begin(), shuffled.end());
  SeededRng rng(derive_seed(seed, "scene-split"));
  rng.shuffle(shuffled);

  std::size_t unseen_count = static_cast<std::size_t>(
      std::llround(ratio_unseen * static_cast<double>(scene_ids.size())));
  unseen_count = std::clamp<std::size_t>(unseen_count, 1, scene_ids.size() - 1);

  std::vector<std::string> unseen(shuffled.begin(),
                                  shuffled.begin() + unseen_count);
  std::vector<std::string> train(shuffled.begin() + unseen_count,
                                 shuffled.end());
  std::sort(unseen.begin(), unseen.end());
  std::sort(train.begin(), train.end());
  return {train, unseen};
}

Split training_scene_split(std::uint64_t episode_id, double ratio_val_seen) {
  if (ratio_val_seen <= 0.0) {
    return Split::kTrain;
  }
  const std::uint64_t bucket =
      derive_seed(episode_id, "val-seen-holdout") % 1000000ULL;
  return static_cast<double>(bucket) < ratio_val_seen * 1000000.0
             ? Split::kValSeen
             : Split::kTrain;
}

}  // namespace navgen
