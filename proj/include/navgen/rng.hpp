#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace navgen {

// FNV-1a, 64 bit. Used for config digests, episode ids and seed derivation;
// the algorithm is fixed so digests are stable across platforms and releases.
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t state = kFnvOffset) {
  for (unsigned char c : bytes) {
    state ^= static_cast<std::uint64_t>(c);
    state *= kFnvPrime;
  }
  return state;
}

std::string hex16(std::uint64_t value);

// Seedable generator used everywhere randomness is needed. The engine is
// std::mt19937_64 (fully specified by the standard); bounded draws are
// implemented here by hand because the standard distributions are not
// portable across library implementations.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [lo, hi] via rejection sampling.
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi);
  int uniform_int(int lo, int hi);

  // Double in [0, 1) with 53 random bits.
  double uniform_real();
  double uniform_real(double lo, double hi);

  bool bernoulli(double p) { return uniform_real() < p; }

  // Fisher-Yates, back to front.
  template <typename T>
  void shuffle(std::vector<T> &items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_u64(0, i - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Selection sampling (keeps input order): chooses exactly k of n items.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

private:
  std::mt19937_64 engine_;
};

// Hierarchical seed derivation: child streams are independent of the order
// in which sibling streams are consumed.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag,
                          std::uint64_t index);

}  // namespace navgen
