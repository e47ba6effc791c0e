#include "irisvc/iris/match.hpp"

#include <cstdlib>
#include <string>

#include "irisvc/error.hpp"
#include "irisvc/kernels.hpp"

namespace irisvc::iris {

MatchResult hamming_distance(const IrisTemplate& a, const IrisTemplate& b, int max_shift) {
  if (max_shift < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_shift must be non-negative");
  }
  require_same_shape(a.bits, b.bits, "hamming distance bits");
  require_same_shape(a.mask, a.bits, "hamming distance mask");
  require_same_shape(b.mask, b.bits, "hamming distance mask");

  bool found = false;
  MatchResult best;
  // Visit shifts in tie-break order: 0, -1, +1, -2, +2, ...
  for (int magnitude = 0; magnitude <= max_shift; ++magnitude) {
    for (int sign : {-1, 1}) {
      if (magnitude == 0 && sign == 1) continue;
      const int shift = sign * magnitude;
      const BitMatrix bits = rotate_samples(b.bits, shift);
      const BitMatrix mask = rotate_samples(b.mask, shift);
      const auto count = kernels::masked_disagreement(a.bits.bits(), bits.bits(), a.mask.bits(),
                                                      mask.bits());
      if (count.valid == 0) continue;
      const double distance =
          static_cast<double>(count.disagreements) / static_cast<double>(count.valid);
      if (!found || distance < best.distance) {
        best = {distance, shift, count.valid};
        found = true;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::kIncomparable,
                "templates share no valid bits at any shift within +/-" + std::to_string(max_shift));
  }
  return best;
}

}  // namespace irisvc::iris
