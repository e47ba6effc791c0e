#include <string>

#include "codebook.hpp"
#include "irisvc/error.hpp"
#include "irisvc/vc.hpp"

namespace irisvc::vc {

NsSharePair ns_encrypt(const BitMatrix& secret, Rng& rng) {
  NsSharePair pair{BitMatrix(secret.rows(), secret.cols() * 2),
                   BitMatrix(secret.rows(), secret.cols() * 2), secret.rows(), secret.cols()};
  for (std::size_t r = 0; r < secret.rows(); ++r) {
    for (std::size_t c = 0; c < secret.cols(); ++c) {
      const auto sub = detail::ns_pixel(secret.at(r, c), rng.next_bit());
      pair.share_a.set(r, 2 * c, sub.a[0]);
      pair.share_a.set(r, 2 * c + 1, sub.a[1]);
      pair.share_b.set(r, 2 * c, sub.b[0]);
      pair.share_b.set(r, 2 * c + 1, sub.b[1]);
    }
  }
  return pair;
}

BitMatrix ns_stack(const NsSharePair& pair) { return or_stack(pair.share_a, pair.share_b); }

BitMatrix ns_decode(const BitMatrix& stacked, std::size_t rows, std::size_t cols) {
  if (stacked.rows() != rows || stacked.cols() != 2 * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ns decode: stacked image is " + std::to_string(stacked.rows()) + "x" +
                    std::to_string(stacked.cols()) + ", expected " + std::to_string(rows) + "x" +
                    std::to_string(2 * cols));
  }
  BitMatrix secret(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const int weight = stacked.at(r, 2 * c) + stacked.at(r, 2 * c + 1);
      if (weight == 0) {
        throw Error(ErrorCode::kCorruptShare, "ns decode: white subpixel pair at row " +
                                                  std::to_string(r) + ", pixel " +
                                                  std::to_string(c));
      }
      secret.set(r, c, weight == 2);
    }
  }
  return secret;
}

}  // namespace irisvc::vc
