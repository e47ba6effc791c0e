#pragma once

#include <cstddef>

#include "irisvc/iris/template.hpp"

namespace irisvc::iris {

inline constexpr int kDefaultMaxShift = 8;
inline constexpr double kDefaultThreshold = 0.4;

struct MatchResult {
  double distance = 0;
  int best_shift = 0;
  std::size_t compared_bits = 0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Fractional Hamming distance over jointly valid bits, minimised over
// cyclic shifts of b in [-max_shift, max_shift] angular samples. Ties go to
// the smallest |shift|, then to the negative shift. Throws kIncomparable
// when no shift leaves a valid bit.
MatchResult hamming_distance(const IrisTemplate& a, const IrisTemplate& b,
                             int max_shift = kDefaultMaxShift);

}  // namespace irisvc::iris
