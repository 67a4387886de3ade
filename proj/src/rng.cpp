#include "navgen/rng.hpp"

#include <array>
#include <cassert>
#include <charconv>

#include "navgen/errors.hpp"

namespace navgen {

std::string hex16(std::uint64_t value) {
  static const char *digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t SeededRng::uniform_u64(std::uint64_t lo, std::uint64_t hi) {
  assert(lo <= hi);
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) {
    return next_u64();
  }
  const std::uint64_t buckets = span + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % buckets;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return lo + draw % buckets;
}

int SeededRng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(uniform_u64(0, static_cast<std::uint64_t>(hi - lo)));
}

double SeededRng::uniform_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform_real(double lo, double hi) {
  return lo + (hi - lo) * uniform_real();
}

std::vector<std::size_t> SeededRng::sample_indices(std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  if (k >= n) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = i;
    }
    return out;
  }
  out.reserve(k);
  std::size_t needed = k;
  for (std::size_t i = 0; i < n && needed > 0; ++i) {
    const std::size_t remaining = n - i;
    if (uniform_u64(0, remaining - 1) < needed) {
      out.push_back(i);
      --needed;
    }
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h ^= (parent >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  h = fnv1a64(tag, h);
  // splitmix64 finalizer to spread low-entropy tags
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag,
                          std::uint64_t index) {
  std::array<char, 24> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), index);
  (void)ec;
  std::uint64_t h = derive_seed(parent, tag);
  return derive_seed(h, std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "CONFIG";
    case ErrorCode::kData: return "DATA";
    case ErrorCode::kOutOfBounds: return "OUT_OF_BOUNDS";
    case ErrorCode::kOnObstacle: return "ON_OBSTACLE";
    case ErrorCode::kUnfixable: return "UNFIXABLE";
    case ErrorCode::kVersionMismatch: return "VERSION_MISMATCH";
    case ErrorCode::kDigestMismatch: return "DIGEST_MISMATCH";
    case ErrorCode::kTruncated: return "TRUNCATED";
  }
  return "UNKNOWN";
}

}  // namespace navgen
