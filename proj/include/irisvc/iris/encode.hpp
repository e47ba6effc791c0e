#pragma once

#include <cstddef>
#include <vector>

#include "irisvc/iris/normalize.hpp"
#include "irisvc/iris/template.hpp"

namespace irisvc::iris {

struct LogGaborParams {
  double wavelength = 18.0;  // samples per cycle at the centre frequency
  double sigma_on_f = 0.5;   // bandwidth ratio
};

void validate(const LogGaborParams& params);

// exp(-(ln(f/f0))^2 / (2 ln(sigma_on_f)^2)) with f0 = 1/wavelength; 0 at f = 0.
double log_gabor_gain(double frequency, const LogGaborParams& params);

// Transfer function over the bins of an n-point DFT. Only the DC-free
// positive half (1..n/2) is non-zero, so the filtered row is analytic.
std::vector<double> log_gabor_filter(std::size_t n, const LogGaborParams& params);

// Relative and absolute floors on the response magnitude below which the
// phase bits are marked invalid.
inline constexpr double kRelativeMagnitudeFloor = 1e-4;
inline constexpr double kAbsoluteMagnitudeFloor = 1e-9;

IrisTemplate encode_features(const NormalizedIris& n, const LogGaborParams& params = {});

}  // namespace irisvc::iris
