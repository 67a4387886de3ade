#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace navgen {

// Shortest round-trip decimal form (std::to_chars). All file formats use this
// so that identical inputs always serialize to identical bytes.
std::string format_double(double value);
std::string format_int(long long value);

double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_hex64(std::string_view text, std::string_view what);

std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_char(std::string_view text, char sep);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view content);

}  // namespace navgen
