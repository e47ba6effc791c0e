#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace irisvc {

// Rectangular binary image stored row-major, one byte per bit.
// 0 = white, 1 = black (the PBM convention).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols, std::uint8_t fill = 0);
  // Throws kInvalidArgument unless bits.size() == rows * cols and every
  // element is 0 or 1.
  BitMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits);

  static BitMatrix white(std::size_t rows, std::size_t cols) { return {rows, cols, 0}; }
  static BitMatrix black(std::size_t rows, std::size_t cols) { return {rows, cols, 1}; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  std::uint8_t at(std::size_t r, std::size_t c) const noexcept { return bits_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, bool black) noexcept {
    bits_[r * cols_ + c] = black ? 1 : 0;
  }
  void flip(std::size_t r, std::size_t c) noexcept { bits_[r * cols_ + c] ^= 1; }

  std::span<const std::uint8_t> row(std::size_t r) const noexcept {
    return {bits_.data() + r * cols_, cols_};
  }
  std::span<std::uint8_t> row(std::size_t r) noexcept { return {bits_.data() + r * cols_, cols_}; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> bits() noexcept { return bits_; }

  std::size_t count_black() const noexcept;

  bool same_shape(const BitMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

BitMatrix complement(const BitMatrix& m);
// Row r of the output is row (rows - 1 - r) of the input.
BitMatrix flip_vertical(const BitMatrix& m);
BitMatrix bitwise_xor(const BitMatrix& a, const BitMatrix& b);
// Superimposition of two transparencies: black wins.
BitMatrix or_stack(const BitMatrix& a, const BitMatrix& b);

// Rows [first, first + count) as a new matrix.
BitMatrix row_slice(const BitMatrix& m, std::size_t first, std::size_t count);
// Stacks `top` above `bottom`; column counts must agree.
BitMatrix vconcat(const BitMatrix& top, const BitMatrix& bottom);

// Throws kDimensionMismatch naming `what` when shapes differ.
void require_same_shape(const BitMatrix& a, const BitMatrix& b, const char* what);

}  // namespace irisvc
