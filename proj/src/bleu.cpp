#include "navgen/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "navgen/errors.hpp"

namespace navgen {

namespace {

std::unordered_map<std::string, long long> ngram_counts(
    const std::vector<std::string> &tokens, std::size_t n) {
  std::unordered_map<std::string, long long> counts;
  if (tokens.size() < n) {
    return counts;
  }
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) {
        key += '\x1f';
      }
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

void BleuAccumulator::add(const std::vector<std::string> &candidate,
                          const std::vector<std::vector<std::string>> &references) {
  if (candidate.empty()) {
    throw DataError("bleu: empty candidate");
  }
  if (references.empty()) {
    throw DataError("bleu: need at least one reference");
  }
  for (const auto &ref : references) {
    if (ref.empty()) {
      throw DataError("bleu: empty reference");
    }
  }

  candidate_length_ += static_cast<long long>(candidate.size());
  long long closest = static_cast<long long>(references.front().size());
  for (const auto &ref : references) {
    const long long len = static_cast<long long>(ref.size());
    const long long cand = static_cast<long long>(candidate.size());
    if (std::llabs(len - cand) < std::llabs(closest - cand) ||
        (std::llabs(len - cand) == std::llabs(closest - cand) && len < closest)) {
      closest = len;
    }
  }
  reference_length_ += closest;

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cand_counts = ngram_counts(candidate, n);
    std::unordered_map<std::string, long long> max_ref;
    for (const auto &ref : references) {
      for (const auto &[gram, count] : ngram_counts(ref, n)) {
        auto &slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    long long clipped = 0;
    long long total = 0;
    for (const auto &[gram, count] : cand_counts) {
      total += count;
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) {
        clipped += std::min(count, it->second);
      }
    }
    clipped_[n - 1] += clipped;
    totals_[n - 1] += total;
  }
}

BleuScore BleuAccumulator::finalize() const {
  if (candidate_length_ == 0) {
    throw DataError("bleu: nothing accumulated");
  }
  BleuScore score;
  score.candidate_length = candidate_length_;
  score.reference_length = reference_length_;
  score.brevity_penalty =
      candidate_length_ >= reference_length_
          ? 1.0
          : std::exp(1.0 - static_cast<double>(reference_length_) /
                               static_cast<double>(candidate_length_));

  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    double p = 0.0;
    if (totals_[n] == 0) {
      p = 0.0;  // candidate shorter than n tokens
    } else if (clipped_[n] > 0) {
      p = static_cast<double>(clipped_[n]) / static_cast<double>(totals_[n]);
    } else if (n >= 1) {
      p = 1.0 / static_cast<double>(totals_[n] + 1);  // add-one smoothing
    } else {
      p = 0.0;  // p1 stays unsmoothed
    }
    score.precisions[n] = p;
    if (p <= 0.0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  score.value = zero ? 0.0 : score.brevity_penalty * std::exp(log_sum / 4.0);
  return score;
}

BleuScore bleu4(const std::vector<std::string> &candidate,
                const std::vector<std::vector<std::string>> &references) {
  BleuAccumulator acc;
  acc.add(candidate, references);
  return acc.finalize();
}

}  // namespace navgen
