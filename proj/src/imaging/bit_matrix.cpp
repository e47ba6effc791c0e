#include "irisvc/bit_matrix.hpp"

#include <algorithm>
#include <string>

#include "irisvc/error.hpp"
#include "irisvc/kernels.hpp"

namespace irisvc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols, std::uint8_t fill)
    : rows_(rows), cols_(cols), bits_(rows * cols, fill ? 1 : 0) {}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
  if (bits_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kInvalidArgument, "bit matrix: " + std::to_string(bits_.size()) +
                                                 " bits for " + std::to_string(rows_) + "x" +
                                                 std::to_string(cols_));
  }
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw Error(ErrorCode::kInvalidArgument, "bit matrix: element outside {0,1}");
  }
}

std::size_t BitMatrix::count_black() const noexcept { return kernels::count_ones(bits_); }

void require_same_shape(const BitMatrix& a, const BitMatrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

BitMatrix complement(const BitMatrix& m) {
  BitMatrix out(m.rows(), m.cols());
  kernels::not_bits(m.bits(), out.bits());
  return out;
}

BitMatrix flip_vertical(const BitMatrix& m) {
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto src = m.row(m.rows() - 1 - r);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

BitMatrix bitwise_xor(const BitMatrix& a, const BitMatrix& b) {
  require_same_shape(a, b, "xor");
  BitMatrix out(a.rows(), a.cols());
  kernels::xor_bits(a.bits(), b.bits(), out.bits());
  return out;
}

BitMatrix or_stack(const BitMatrix& a, const BitMatrix& b) {
  require_same_shape(a, b, "stack");
  BitMatrix out(a.rows(), a.cols());
  kernels::or_bits(a.bits(), b.bits(), out.bits());
  return out;
}

BitMatrix row_slice(const BitMatrix& m, std::size_t first, std::size_t count) {
  if (first + count > m.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "row slice exceeds matrix height");
  }
  BitMatrix out(count, m.cols());
  const auto src = m.bits().subspan(first * m.cols(), count * m.cols());
  std::copy(src.begin(), src.end(), out.bits().begin());
  return out;
}

BitMatrix vconcat(const BitMatrix& top, const BitMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "vconcat: column counts differ");
  }
  BitMatrix out(top.rows() + bottom.rows(), top.cols());
  auto dst = std::copy(top.bits().begin(), top.bits().end(), out.bits().begin());
  std::copy(bottom.bits().begin(), bottom.bits().end(), dst);
  return out;
}

}  // namespace irisvc
