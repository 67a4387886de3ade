#include "navgen/shard.hpp"

#include <algorithm>
#include <set>

#include "navgen/errors.hpp"
#include "navgen/rng.hpp"
#include "navgen/textio.hpp"

namespace navgen {

std::string serialize_episode_line(const Episode &episode) {
  const Trajectory &traj = episode.trajectory;
  std::string line = "episode " + hex16(episode.episode_id);
  line += " scene " + traj.scene_id;
  line += " split " + std::string(split_name(episode.split));
  line += traj.style == TrajectoryStyle::kR2R ? " style r2r" : " style reverie";
  line += " nodes ";
  for (std::size_t i = 0; i < traj.node_ids.size(); ++i) {
    if (i > 0) {
      line += ',';
    }
    line += format_int(traj.node_ids[i]);
  }
  line += " length " + format_double(traj.length);
  line += " object ";
  line += traj.target_object ? format_int(*traj.target_object) : "-";
  line += " speaker " + episode.instruction.speaker_tag;
  line += " text";
  for (const std::string &token : episode.instruction.tokens) {
    line += ' ';
    line += token;
  }
  return line;
}

Episode parse_episode_line(std::string_view line) {
  const auto parts = split_ws(line);
  // Fixed prefix of 17 fields, then at least one text token.
  if (parts.size() < 18 || parts[0] != "episode" || parts[2] != "scene" ||
      parts[4] != "split" || parts[6] != "style" || parts[8] != "nodes" ||
      parts[10] != "length" || parts[12] != "object" || parts[14] != "speaker" ||
      parts[16] != "text") {
    throw DataError("shard: malformed episode line");
  }
  Episode episode;
  episode.episode_id = parse_hex64(parts[1], "episode id");
  episode.trajectory.scene_id = std::string(parts[3]);
  episode.split = split_from_name(parts[5]);
  if (parts[7] == "r2r") {
    episode.trajectory.style = TrajectoryStyle::kR2R;
  } else if (parts[7] == "reverie") {
    episode.trajectory.style = TrajectoryStyle::kReverie;
  } else {
    throw DataError("shard: unknown trajectory style");
  }
  for (const auto id_text : split_char(parts[9], ',')) {
    episode.trajectory.node_ids.push_back(
        static_cast<int>(parse_int(id_text, "node id")));
  }
  episode.trajectory.length = parse_double(parts[11], "trajectory length");
  if (parts[13] != "-") {
    episode.trajectory.target_object =
        static_cast<int>(parse_int(parts[13], "object id"));
  }
  episode.instruction.speaker_tag = std::string(parts[15]);
  for (std::size_t i = 17; i < parts.size(); ++i) {
    episode.instruction.tokens.emplace_back(parts[i]);
  }
  if (episode.instruction.tokens.empty()) {
    throw DataError("shard: episode has no instruction text");
  }
  return episode;
}

std::string serialize_shard(const std::vector<Episode> &episodes,
                            const std::string &config_digest,
                            std::uint64_t seed) {
  std::set<std::string> scenes;
  std::set<std::uint64_t> ids;
  for (const Episode &e : episodes) {
    scenes.insert(e.trajectory.scene_id);
    if (!ids.insert(e.episode_id).second) {
      throw DataError("shard: duplicate episode id " + hex16(e.episode_id));
    }
  }
  std::string out = "shard v1\n";
  out += "config_digest " + config_digest + "\n";
  out += "seed " + format_int(static_cast<long long>(seed)) + "\n";
  out += "scenes";
  for (const std::string &scene : scenes) {
    out += ' ';
    out += scene;
  }
  out += "\n";
  out += "count " + format_int(static_cast<long long>(episodes.size())) + "\n";
  for (const Episode &e : episodes) {
    out += serialize_episode_line(e);
    out += '\n';
  }
  out += "checksum " + hex16(fnv1a64(out)) + "\n";
  return out;
}

void write_shard(const std::string &path, const std::vector<Episode> &episodes,
                 const std::string &config_digest, std::uint64_t seed) {
  write_text_file(path, serialize_shard(episodes, config_digest, seed));
}

std::vector<Episode> parse_shard(const std::string &content,
                                 ShardHeader *header) {
  // Locate the final checksum line first; its digest covers everything
  // before it, so any corrupted byte surfaces as DIGEST_MISMATCH.
  if (content.size() < 2 || content.back() != '\n') {
    throw DataError(ErrorCode::kTruncated,
                    "shard: missing trailing newline at byte offset " +
                        format_int(static_cast<long long>(content.size())));
  }
  const std::size_t prev_newline = content.rfind('\n', content.size() - 2);
  const std::size_t last_line_start =
      prev_newline == std::string::npos ? 0 : prev_newline + 1;
  const std::string_view last_line(content.data() + last_line_start,
                                   content.size() - last_line_start - 1);
  const auto checksum_parts = split_ws(last_line);
  if (checksum_parts.size() != 2 || checksum_parts[0] != "checksum") {
    throw DataError(ErrorCode::kTruncated,
                    "shard: missing checksum line at byte offset " +
                        format_int(static_cast<long long>(last_line_start)));
  }
  const std::string expected =
      hex16(fnv1a64(std::string_view(content.data(), last_line_start)));
  if (checksum_parts[1] != expected) {
    throw DataError(ErrorCode::kDigestMismatch,
                    "shard: checksum mismatch at byte offset " +
                        format_int(static_cast<long long>(last_line_start)) +
                        " (stored " + std::string(checksum_parts[1]) +
                        ", computed " + expected + ")");
  }

  const auto lines =
      split_char(std::string_view(content.data(), last_line_start), '\n');
  // split produces a trailing empty piece after the final newline.
  const std::size_t line_count = lines.empty() ? 0 : lines.size() - 1;
  std::size_t offset = 0;
  auto fail_truncated = [&](const std::string &what) {
    throw DataError(ErrorCode::kTruncated, "shard: " + what +
                                               " at byte offset " +
                                               format_int(static_cast<long long>(offset)));
  };
  if (line_count < 5) {
    fail_truncated("incomplete header");
  }
  if (lines[0] != "shard v1") {
    throw DataError(ErrorCode::kVersionMismatch,
                    "shard: unsupported format version '" +
                        std::string(lines[0]) + "' at byte offset 0");
  }
  ShardHeader parsed;
  const auto digest_parts = split_ws(lines[1]);
  const auto seed_parts = split_ws(lines[2]);
  const auto scene_parts = split_ws(lines[3]);
  const auto count_parts = split_ws(lines[4]);
  if (digest_parts.size() != 2 || digest_parts[0] != "config_digest" ||
      seed_parts.size() != 2 || seed_parts[0] != "seed" ||
      scene_parts.empty() || scene_parts[0] != "scenes" ||
      count_parts.size() != 2 || count_parts[0] != "count") {
    fail_truncated("malformed header");
  }
  parsed.config_digest = std::string(digest_parts[1]);
  parsed.seed = static_cast<std::uint64_t>(parse_int(seed_parts[1], "seed"));
  for (std::size_t i = 1; i < scene_parts.size(); ++i) {
    parsed.scene_ids.emplace_back(scene_parts[i]);
  }
  parsed.count = static_cast<std::size_t>(parse_int(count_parts[1], "count"));

  for (std::size_t i = 0; i < 5; ++i) {
    offset += lines[i].size() + 1;
  }
  if (line_count - 5 != parsed.count) {
    fail_truncated("record count does not match header");
  }
  std::vector<Episode> episodes;
  episodes.reserve(parsed.count);
  std::set<std::uint64_t> ids;
  for (std::size_t i = 5; i < line_count; ++i) {
    Episode episode = parse_episode_line(lines[i]);
    if (!ids.insert(episode.episode_id).second) {
      throw DataError("shard: duplicate episode id " +
                      hex16(episode.episode_id));
    }
    episodes.push_back(std::move(episode));
    offset += lines[i].size() + 1;
  }
  if (header != nullptr) {
    *header = std::move(parsed);
  }
  return episodes;
}

std::vector<Episode> read_shard(const std::string &path, ShardHeader *header) {
  return parse_shard(read_text_file(path), header);
}

}  // namespace navgen
