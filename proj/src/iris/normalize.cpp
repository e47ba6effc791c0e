#include "irisvc/iris/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "irisvc/error.hpp"

namespace irisvc::iris {
namespace {

// Distance along unit direction (ux, uy) from `from` to the boundary of
// `circle`; `from` must lie inside the circle.
double ray_to_circle(double fx, double fy, double ux, double uy, const Circle& circle) {
  const double dx = fx - circle.cx;
  const double dy = fy - circle.cy;
  const double b = dx * ux + dy * uy;
  const double c = dx * dx + dy * dy - circle.r * circle.r;
  return -b + std::sqrt(b * b - c);
}

}  // namespace

double sample_angle(std::size_t column) {
  return 2.0 * std::numbers::pi * static_cast<double>(column) /
         static_cast<double>(kAngularSamples);
}

double radial_fraction(std::size_t row) {
  return static_cast<double>(row + 1) / static_cast<double>(kRadialSamples + 1);
}

NormalizedIris normalize(const GrayImage& eye, const SegmentationResult& seg) {
  const Circle& pupil = seg.pupil;
  const Circle& iris = seg.iris;
  if (!(pupil.r > 0) || pupil.r >= iris.r) {
    throw Error(ErrorCode::kInvalidArgument, "normalize: pupil radius " + std::to_string(pupil.r) +
                                                 " must be positive and below iris radius " +
                                                 std::to_string(iris.r));
  }
  if (std::hypot(pupil.cx - iris.cx, pupil.cy - iris.cy) >= iris.r) {
    throw Error(ErrorCode::kInvalidArgument, "normalize: pupil centre outside iris circle");
  }
  const bool has_noise = seg.noise.rows() == eye.rows() && seg.noise.cols() == eye.cols();
  const double max_x = static_cast<double>(eye.cols()) - 1.0;
  const double max_y = static_cast<double>(eye.rows()) - 1.0;

  NormalizedIris out;
  for (std::size_t j = 0; j < kAngularSamples; ++j) {
    const double theta = sample_angle(j);
    const double ux = std::cos(theta);
    const double uy = std::sin(theta);
    const double px = pupil.cx + pupil.r * ux;
    const double py = pupil.cy + pupil.r * uy;
    const double reach = ray_to_circle(pupil.cx, pupil.cy, ux, uy, iris);
    const double ix = pupil.cx + reach * ux;
    const double iy = pupil.cy + reach * uy;
    for (std::size_t i = 0; i < kRadialSamples; ++i) {
      const double t = radial_fraction(i);
      const double x = (1.0 - t) * px + t * ix;
      const double y = (1.0 - t) * py + t * iy;
      if (!(x >= 0.0 && y >= 0.0 && x <= max_x && y <= max_y)) {
        out.mask.set(i, j, true);
        continue;
      }
      const auto x0 = static_cast<std::size_t>(x);
      const auto y0 = static_cast<std::size_t>(y);
      const std::size_t x1 = std::min(x0 + 1, eye.cols() - 1);
      const std::size_t y1 = std::min(y0 + 1, eye.rows() - 1);
      const double fx = x - static_cast<double>(x0);
      const double fy = y - static_cast<double>(y0);
      out.at(i, j) = (1 - fx) * (1 - fy) * eye.at(y0, x0) + fx * (1 - fy) * eye.at(y0, x1) +
                     (1 - fx) * fy * eye.at(y1, x0) + fx * fy * eye.at(y1, x1);
      if (has_noise) {
        const auto nx = static_cast<std::size_t>(std::lround(x));
        const auto ny = static_cast<std::size_t>(std::lround(y));
        if (seg.noise.at(ny, nx)) out.mask.set(i, j, true);
      }
    }
  }
  return out;
}

GrayImage to_gray(const NormalizedIris& n) {
  GrayImage img(kRadialSamples, kAngularSamples);
  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      img.at(i, j) = static_cast<std::uint8_t>(std::clamp(std::lround(n.at(i, j)), 0L, 255L));
    }
  }
  return img;
}

}  // namespace irisvc::iris
