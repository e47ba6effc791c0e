#pragma once

#include <cstddef>

#include "irisvc/bit_matrix.hpp"

namespace irisvc::iris {

// Fixed resolution of the whole system: share dimensions derive from these.
inline constexpr std::size_t kRadialSamples = 20;
inline constexpr std::size_t kAngularSamples = 240;
inline constexpr std::size_t kBitsPerSample = 2;
inline constexpr std::size_t kTemplateRows = kRadialSamples;
inline constexpr std::size_t kTemplateCols = kAngularSamples * kBitsPerSample;

// Angular sample j occupies columns 2j (real-part sign) and 2j+1
// (imaginary-part sign). A set mask bit marks the template bit invalid.
struct IrisTemplate {
  BitMatrix bits;
  BitMatrix mask;

  friend bool operator==(const IrisTemplate&, const IrisTemplate&) = default;
};

// Throws kDimensionMismatch unless bits and mask are 20x480.
void validate(const IrisTemplate& t);

BitMatrix template_to_image(const IrisTemplate& t);
IrisTemplate image_to_template(const BitMatrix& image, const BitMatrix& mask);

// Cyclic rotation by `shift` angular samples (2*shift bit columns); positive
// shifts move content toward higher columns. Works on any matrix whose
// column count is even.
BitMatrix rotate_samples(const BitMatrix& m, int shift);
IrisTemplate rotate(const IrisTemplate& t, int shift);

}  // namespace irisvc::iris
