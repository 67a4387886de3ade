#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navgen/episode.hpp"

namespace navgen {

// Line-delimited shard format, one episode per line with a fixed field
// order, a self-describing header and a trailing whole-file checksum:
//
//   shard v1
//   config_digest <hex16>
//   seed <int>
//   scenes <scene_id>...
//   count <int>
//   episode <hex16> scene <id> split <tag> style <tag> nodes <csv>
//     length <num> object <int|-> speaker <tag> text <tokens>...
//   checksum <hex16 of all preceding bytes>
//
// Reads validate the checksum, then the version, then the structure, and
// never return a partial result: DIGEST_MISMATCH, VERSION_MISMATCH and
// TRUNCATED all carry the byte offset of the offending line.
struct ShardHeader {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<std::string> scene_ids;
  std::size_t count = 0;
};

std::string serialize_episode_line(const Episode &episode);
Episode parse_episode_line(std::string_view line);

std::string serialize_shard(const std::vector<Episode> &episodes,
                            const std::string &config_digest,
                            std::uint64_t seed);

void write_shard(const std::string &path, const std::vector<Episode> &episodes,
                 const std::string &config_digest, std::uint64_t seed);

std::vector<Episode> parse_shard(const std::string &content,
                                 ShardHeader *header = nullptr);
std::vector<Episode> read_shard(const std::string &path,
                                ShardHeader *header = nullptr);

}  // namespace navgen
