#pragma once

#include <array>
#include <cstdint>

// Per-pixel encoding rules shared by the encryptors and the contrast
// enumeration.
namespace irisvc::vc::detail {

struct NsSubpixels {
  std::array<std::uint8_t, 2> a;
  std::array<std::uint8_t, 2> b;
};

// left_black picks which subpixel of share A is black; share B copies the
// pair for a white pixel and complements it for a black one.
constexpr NsSubpixels ns_pixel(bool black, bool left_black) {
  const bool b_left = black ? !left_black : left_black;
  return {{static_cast<std::uint8_t>(left_black), static_cast<std::uint8_t>(!left_black)},
          {static_cast<std::uint8_t>(b_left), static_cast<std::uint8_t>(!b_left)}};
}

struct FangPixel {
  std::uint8_t share1;
  std::uint8_t share2;
};

// share1 is uniform (a fresh random bit in the upper half, a uniform bit
// XOR image 2 in the lower half); share2 follows image 1.
constexpr FangPixel fang_pixel(bool image1_black, bool share1_bit) {
  return {static_cast<std::uint8_t>(share1_bit),
          static_cast<std::uint8_t>(share1_bit != image1_black)};
}

}  // namespace irisvc::vc::detail
