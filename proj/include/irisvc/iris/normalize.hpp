#pragma once

#include <vector>

#include "irisvc/bit_matrix.hpp"
#include "irisvc/gray_image.hpp"
#include "irisvc/iris/segment.hpp"
#include "irisvc/iris/template.hpp"

namespace irisvc::iris {

// Rubber-sheet unwrapping: kRadialSamples rows (pupil side first) by
// kAngularSamples columns.
struct NormalizedIris {
  std::vector<double> samples;  // row-major intensities
  BitMatrix mask{kRadialSamples, kAngularSamples};

  NormalizedIris() : samples(kRadialSamples * kAngularSamples, 0.0) {}
  double at(std::size_t r, std::size_t c) const { return samples[r * kAngularSamples + c]; }
  double& at(std::size_t r, std::size_t c) { return samples[r * kAngularSamples + c]; }
};

// Angle of column j: 2*pi*j/kAngularSamples, measured from the +x axis
// toward +y (image rows grow downward). Radial fraction of row i:
// (i+1)/(kRadialSamples+1).
double sample_angle(std::size_t column);
double radial_fraction(std::size_t row);

NormalizedIris normalize(const GrayImage& eye, const SegmentationResult& seg);

// 8-bit rendering of the strip for inspection.
GrayImage to_gray(const NormalizedIris& n);

}  // namespace irisvc::iris
