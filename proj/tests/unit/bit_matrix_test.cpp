#include "irisvc/bit_matrix.hpp"

#include <gtest/gtest.h>

#include "irisvc/error.hpp"
#include "irisvc/rng.hpp"

namespace irisvc {
namespace {

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (auto& b : m.bits()) b = rng.next_bit();
  return m;
}

TEST(BitMatrix, ConstructionValidates) {
  EXPECT_THROW(BitMatrix(2, 2, std::vector<std::uint8_t>{0, 1, 0}), Error);
  EXPECT_THROW(BitMatrix(1, 2, std::vector<std::uint8_t>{0, 2}), Error);
  const BitMatrix m(1, 2, std::vector<std::uint8_t>{0, 1});
  EXPECT_EQ(m.at(0, 1), 1);
  EXPECT_EQ(m.count_black(), 1u);
}

TEST(BitMatrix, Complement) {
  EXPECT_EQ(complement(BitMatrix::white(2, 2)), BitMatrix::black(2, 2));
  const BitMatrix m(2, 2, std::vector<std::uint8_t>{0, 1, 1, 0});
  EXPECT_EQ(complement(m), BitMatrix(2, 2, std::vector<std::uint8_t>{1, 0, 0, 1}));
}

TEST(BitMatrix, FlipVertical) {
  Rng rng(3);
  const BitMatrix one = random_matrix(1, 17, rng);
  EXPECT_EQ(flip_vertical(one), one);
  const BitMatrix m = random_matrix(20, 33, rng);
  const BitMatrix f = flip_vertical(m);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    EXPECT_EQ(f.at(0, c), m.at(19, c));
    EXPECT_EQ(f.at(9, c), m.at(10, c));
    EXPECT_EQ(f.at(10, c), m.at(9, c));
  }
}

TEST(BitMatrix, XorAndStackIdentities) {
  Rng rng(4);
  const BitMatrix m = random_matrix(7, 45, rng);
  const BitMatrix w = BitMatrix::white(7, 45);
  const BitMatrix b = BitMatrix::black(7, 45);
  EXPECT_EQ(bitwise_xor(m, m), w);
  EXPECT_EQ(bitwise_xor(m, w), m);
  EXPECT_EQ(bitwise_xor(m, complement(m)), b);
  EXPECT_EQ(or_stack(m, b), b);
  EXPECT_EQ(or_stack(m, w), m);
  EXPECT_EQ(or_stack(BitMatrix(1, 2, std::vector<std::uint8_t>{0, 1}),
                     BitMatrix(1, 2, std::vector<std::uint8_t>{1, 0})),
            BitMatrix::black(1, 2));
}

TEST(BitMatrix, AlgebraicProperties) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const std::size_t rows = 1 + rng.uniform(24);
    const std::size_t cols = 1 + rng.uniform(70);
    const BitMatrix a = random_matrix(rows, cols, rng);
    const BitMatrix b = random_matrix(rows, cols, rng);
    const BitMatrix c = random_matrix(rows, cols, rng);
    ASSERT_EQ(complement(complement(a)), a);
    ASSERT_EQ(flip_vertical(flip_vertical(a)), a);
    ASSERT_EQ(bitwise_xor(a, b), bitwise_xor(b, a));
    ASSERT_EQ(bitwise_xor(bitwise_xor(a, b), c), bitwise_xor(a, bitwise_xor(b, c)));
    ASSERT_EQ(bitwise_xor(bitwise_xor(a, b), b), a);
    const BitMatrix s = or_stack(a, b);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t col = 0; col < cols; ++col) {
        ASSERT_EQ(s.at(r, col), (a.at(r, col) | b.at(r, col)));
      }
    }
  }
}

TEST(BitMatrix, ShapeMismatchThrows) {
  try {
    bitwise_xor(BitMatrix(2, 3), BitMatrix(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  EXPECT_THROW(or_stack(BitMatrix(2, 3), BitMatrix(2, 4)), Error);
  EXPECT_THROW(vconcat(BitMatrix(2, 3), BitMatrix(2, 4)), Error);
  EXPECT_THROW(row_slice(BitMatrix(2, 3), 1, 2), Error);
}

TEST(BitMatrix, SliceAndConcat) {
  Rng rng(6);
  const BitMatrix m = random_matrix(20, 9, rng);
  const BitMatrix top = row_slice(m, 0, 10);
  const BitMatrix bottom = row_slice(m, 10, 10);
  EXPECT_EQ(vconcat(top, bottom), m);
  EXPECT_EQ(bottom.at(0, 3), m.at(10, 3));
}

}  // namespace
}  // namespace irisvc
