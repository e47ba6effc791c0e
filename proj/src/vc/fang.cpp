#include <string>

#include "irisvc/error.hpp"
#include "irisvc/kernels.hpp"
#include "irisvc/vc.hpp"

namespace irisvc::vc {
namespace {

void require_pair(const FangSharePair& pair) {
  require_same_shape(pair.share1, pair.share2, "fang shares");
  if (pair.share1.rows() % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "fang shares: row count must be even");
  }
}

}  // namespace

FangSharePair fang_encrypt(const BitMatrix& image1, const BitMatrix& image2, Rng& rng) {
  require_same_shape(image1, image2, "fang encrypt");
  const std::size_t rows = image1.rows();
  if (rows % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "fang encrypt: row count " + std::to_string(rows) + " is odd");
  }
  const std::size_t half = rows / 2;
  FangSharePair pair{BitMatrix(rows, image1.cols()), BitMatrix(rows, image1.cols())};

  // Upper half: share 1 random, share 2 equal where image 1 is white and
  // complemented where it is black.
  for (std::size_t x = 0; x < half; ++x) {
    for (auto& bit : pair.share1.row(x)) bit = rng.next_bit();
    kernels::xor_bits(pair.share1.row(x), image1.row(x), pair.share2.row(x));
  }

  // Lower half: share 1 row x starts from share 2 row (rows-1-x), equal where
  // image 2 is white. Share 2 then follows image 1 as in the upper half.
  for (std::size_t x = half; x < rows; ++x) {
    const auto reversed = pair.share2.row(rows - 1 - x);
    kernels::xor_bits(reversed, image2.row(x), pair.share1.row(x));
    kernels::xor_bits(pair.share1.row(x), image1.row(x), pair.share2.row(x));
  }
  return pair;
}

BitMatrix fang_decode_primary(const FangSharePair& pair) {
  require_same_shape(pair.share1, pair.share2, "fang decode");
  return bitwise_xor(pair.share1, pair.share2);
}

BitMatrix fang_stack_visual(const FangSharePair& pair) {
  return or_stack(pair.share1, pair.share2);
}

BitMatrix fang_reverse_stack(const FangSharePair& pair) {
  require_pair(pair);
  return bitwise_xor(pair.share1, flip_vertical(pair.share2));
}

BitMatrix fang_decode_secondary(const FangSharePair& pair) {
  require_pair(pair);
  const std::size_t rows = pair.share1.rows();
  const std::size_t half = rows / 2;
  BitMatrix recovered(half, pair.share1.cols());
  for (std::size_t x = half; x < rows; ++x) {
    kernels::xor_bits(pair.share1.row(x), pair.share2.row(rows - 1 - x), recovered.row(x - half));
  }
  return recovered;
}

}  // namespace irisvc::vc
