#pragma once

#include <array>
#include <string>
#include <vector>

namespace navgen {

struct BleuScore {
  double value = 0.0;                      // in [0, 1]
  std::array<double, 4> precisions{};      // p1..p4, post smoothing
  double brevity_penalty = 1.0;
  long long candidate_length = 0;
  long long reference_length = 0;          // closest reference length
};

// Corpus-style BLEU with n <= 4. Clipped n-gram counts against the per-gram
// maximum over references; brevity penalty exp(1 - r/c) for c < r, with r
// the closest reference length per sentence (ties to the shorter one).
// Smoothing: when a higher-order (n >= 2) clipped count is zero, that
// precision becomes 1/(denominator + 1); p1 is never smoothed. A candidate
// shorter than n tokens has no n-grams and scores zero. This variant is
// fixed here as the project's reference definition.
class BleuAccumulator {
public:
  void add(const std::vector<std::string> &candidate,
           const std::vector<std::vector<std::string>> &references);
  BleuScore finalize() const;

private:
  std::array<long long, 4> clipped_{};
  std::array<long long, 4> totals_{};
  long long candidate_length_ = 0;
  long long reference_length_ = 0;
};

BleuScore bleu4(const std::vector<std::string> &candidate,
                const std::vector<std::vector<std::string>> &references);

}  // namespace navgen
