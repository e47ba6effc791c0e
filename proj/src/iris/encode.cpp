#include "irisvc/iris/encode.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "irisvc/error.hpp"

namespace irisvc::iris {
namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Fft {
 public:
  explicit Fft(std::size_t n)
      : n_(n),
        buffer_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_1d(static_cast<int>(n), buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(static_cast<int>(n), buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buffer_); }
  void forward() { fftw_execute(forward_); }
  // Unnormalised inverse.
  void backward() { fftw_execute(backward_); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  fftw_complex* buffer_;
  fftw_plan forward_;
  fftw_plan backward_;
};

}  // namespace

void validate(const LogGaborParams& p) {
  if (!(p.wavelength >= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "log-gabor wavelength must be at least 2 samples, got " + std::to_string(p.wavelength));
  }
  if (!(p.sigma_on_f > 0.0 && p.sigma_on_f < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "log-gabor sigma_on_f must lie in (0, 1)");
  }
}

double log_gabor_gain(double frequency, const LogGaborParams& params) {
  if (frequency <= 0.0) return 0.0;
  const double f0 = 1.0 / params.wavelength;
  const double num = std::log(frequency / f0);
  const double den = std::log(params.sigma_on_f);
  return std::exp(-(num * num) / (2.0 * den * den));
}

std::vector<double> log_gabor_filter(std::size_t n, const LogGaborParams& params) {
  std::vector<double> filter(n, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    filter[k] = log_gabor_gain(static_cast<double>(k) / static_cast<double>(n), params);
  }
  return filter;
}

IrisTemplate encode_features(const NormalizedIris& n, const LogGaborParams& params) {
  validate(params);
  if (n.samples.size() != kRadialSamples * kAngularSamples || n.mask.rows() != kRadialSamples ||
      n.mask.cols() != kAngularSamples) {
    throw Error(ErrorCode::kDimensionMismatch,
                "encode: normalized iris must be " + std::to_string(kRadialSamples) + "x" +
                    std::to_string(kAngularSamples));
  }
  const std::vector<double> filter = log_gabor_filter(kAngularSamples, params);
  IrisTemplate t{BitMatrix(kTemplateRows, kTemplateCols), BitMatrix(kTemplateRows, kTemplateCols)};
  Fft fft(kAngularSamples);
  std::vector<double> magnitude(kAngularSamples);

  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    // Occluded samples take the row mean of the valid ones so they do not
    // inject edges into the filter response.
    double sum = 0;
    std::size_t valid = 0;
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      if (!n.mask.at(i, j)) {
        sum += n.at(i, j);
        ++valid;
      }
    }
    const double fill = valid ? sum / static_cast<double>(valid) : 0.0;
    auto* row = fft.data();
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      row[j] = n.mask.at(i, j) ? fill : n.at(i, j);
    }
    fft.forward();
    for (std::size_t k = 0; k < kAngularSamples; ++k) row[k] *= filter[k];
    fft.backward();

    double mean_mag = 0;
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      row[j] /= static_cast<double>(kAngularSamples);
      magnitude[j] = std::abs(row[j]);
      mean_mag += magnitude[j];
    }
    mean_mag /= static_cast<double>(kAngularSamples);
    const double floor = std::max(kRelativeMagnitudeFloor * mean_mag, kAbsoluteMagnitudeFloor);

    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      t.bits.set(i, 2 * j, row[j].real() >= 0.0);
      t.bits.set(i, 2 * j + 1, row[j].imag() >= 0.0);
      if (n.mask.at(i, j) || magnitude[j] < floor) {
        t.mask.set(i, 2 * j, true);
        t.mask.set(i, 2 * j + 1, true);
      }
    }
  }
  return t;
}

}  // namespace irisvc::iris
