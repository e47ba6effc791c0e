#include "irisvc/iris/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace irisvc::iris {
namespace {

struct Plane {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Plane(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
};

struct Region {
  std::size_t r0, r1, c0, c1;  // half-open
  bool empty() const { return r0 >= r1 || c0 >= c1; }
};

struct EdgePoint {
  double x, y;
  double ux, uy;  // unit gradient, pointing toward brighter pixels
};

Plane to_plane(const GrayImage& img) {
  Plane p(img.rows(), img.cols());
  for (std::size_t i = 0; i < p.v.size(); ++i) p.v[i] = img.pixels()[i];
  return p;
}

Plane gaussian_blur(const Plane& in, double sigma) {
  if (sigma <= 0) return in;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    sum += kernel[k + radius];
  }
  for (double& k : kernel) k /= sum;

  auto clamp_index = [](long i, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1));
  };
  Plane tmp(in.rows, in.cols);
  for (std::size_t r = 0; r < in.rows; ++r) {
    for (std::size_t c = 0; c < in.cols; ++c) {
      double acc = 0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * in.at(r, clamp_index(static_cast<long>(c) + k, in.cols));
      }
      tmp.at(r, c) = acc;
    }
  }
  Plane out(in.rows, in.cols);
  for (std::size_t r = 0; r < in.rows; ++r) {
    for (std::size_t c = 0; c < in.cols; ++c) {
      double acc = 0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * tmp.at(clamp_index(static_cast<long>(r) + k, in.rows), c);
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

struct Gradient {
  Plane gx;
  Plane gy;
};

// Sobel responses; border pixels are left at zero.
Gradient sobel(const Plane& p) {
  Gradient g{Plane(p.rows, p.cols), Plane(p.rows, p.cols)};
  for (std::size_t r = 1; r + 1 < p.rows; ++r) {
    for (std::size_t c = 1; c + 1 < p.cols; ++c) {
      g.gx.at(r, c) = (p.at(r - 1, c + 1) + 2 * p.at(r, c + 1) + p.at(r + 1, c + 1)) -
                      (p.at(r - 1, c - 1) + 2 * p.at(r, c - 1) + p.at(r + 1, c - 1));
      g.gy.at(r, c) = (p.at(r + 1, c - 1) + 2 * p.at(r + 1, c) + p.at(r + 1, c + 1)) -
                      (p.at(r - 1, c - 1) + 2 * p.at(r - 1, c) + p.at(r - 1, c + 1));
    }
  }
  return g;
}

// Canny-style edges inside `region`: non-maximum suppression along the
// gradient direction, then hysteresis on the weighted magnitude relative to
// its maximum within the region.
std::vector<EdgePoint> edge_points(const Gradient& g, const GradientWeights& w, double high,
                                   double low, const Region& region) {
  std::vector<EdgePoint> points;
  if (region.empty()) return points;
  const std::size_t rows = g.gx.rows;
  const std::size_t cols = g.gx.cols;
  auto magnitude = [&](std::size_t r, std::size_t c) {
    return std::hypot(g.gx.at(r, c), g.gy.at(r, c));
  };

  Plane weighted(rows, cols);
  double max_weighted = 0;
  for (std::size_t r = std::max<std::size_t>(region.r0, 1); r < std::min(region.r1, rows - 1); ++r) {
    for (std::size_t c = std::max<std::size_t>(region.c0, 1); c < std::min(region.c1, cols - 1);
         ++c) {
      const double gx = g.gx.at(r, c);
      const double gy = g.gy.at(r, c);
      const double m = magnitude(r, c);
      if (m <= 0) continue;
      // Neighbours along the gradient, direction quantised to 45 degrees.
      double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (angle < 0) angle += 180.0;
      int dr = 0, dc = 0;
      if (angle < 22.5 || angle >= 157.5) {
        dc = 1;
      } else if (angle < 67.5) {
        dr = 1, dc = 1;
      } else if (angle < 112.5) {
        dr = 1;
      } else {
        dr = 1, dc = -1;
      }
      const double ahead = magnitude(r + dr, c + dc);
      const double behind = magnitude(r - dr, c - dc);
      if (m < ahead || m <= behind) continue;
      const double mw = std::hypot(w.x * gx, w.y * gy);
      weighted.at(r, c) = mw;
      max_weighted = std::max(max_weighted, mw);
    }
  }
  if (max_weighted <= 1e-9) return points;

  const double hi = high * max_weighted;
  const double lo = low * max_weighted;
  std::vector<std::uint8_t> state(rows * cols, 0);  // 1 = accepted
  std::vector<std::size_t> stack;
  for (std::size_t r = region.r0; r < region.r1; ++r) {
    for (std::size_t c = region.c0; c < region.c1; ++c) {
      if (weighted.at(r, c) >= hi && !state[r * cols + c]) {
        state[r * cols + c] = 1;
        stack.push_back(r * cols + c);
      }
    }
  }
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const long r = static_cast<long>(idx / cols);
    const long c = static_cast<long>(idx % cols);
    for (long dr = -1; dr <= 1; ++dr) {
      for (long dc = -1; dc <= 1; ++dc) {
        const long nr = r + dr;
        const long nc = c + dc;
        if (nr < static_cast<long>(region.r0) || nr >= static_cast<long>(region.r1) ||
            nc < static_cast<long>(region.c0) || nc >= static_cast<long>(region.c1)) {
          continue;
        }
        const std::size_t n = static_cast<std::size_t>(nr) * cols + static_cast<std::size_t>(nc);
        if (!state[n] && weighted.v[n] >= lo) {
          state[n] = 1;
          stack.push_back(n);
        }
      }
    }
  }

  for (std::size_t r = region.r0; r < region.r1; ++r) {
    for (std::size_t c = region.c0; c < region.c1; ++c) {
      if (!state[r * cols + c]) continue;
      const double m = magnitude(r, c);
      points.push_back({static_cast<double>(c), static_cast<double>(r), g.gx.at(r, c) / m,
                        g.gy.at(r, c) / m});
    }
  }
  return points;
}

struct CircleSearch {
  int min_radius;
  int max_radius;
  Region centres;  // admissible centre cells
  // Optional disc constraint on centres.
  double disc_cx = 0, disc_cy = 0, disc_r = -1;
};

struct CircleHit {
  Circle circle;
  double support = 0;  // fraction of the circumference backed by edges
};

// Fraction of the circumference covered by edge pixels lying on the circle
// with a gradient pointing outward (dark inside).
double circle_support(const std::vector<EdgePoint>& points, const Circle& c) {
  std::size_t on_circle = 0;
  for (const auto& p : points) {
    const double dx = p.x - c.cx;
    const double dy = p.y - c.cy;
    const double d = std::hypot(dx, dy);
    if (d <= 0 || std::abs(d - c.r) > 1.5) continue;
    if ((dx * p.ux + dy * p.uy) / d < 0.7) continue;
    ++on_circle;
  }
  return static_cast<double>(on_circle) / (2.0 * std::numbers::pi * c.r);
}

// Each edge point votes, for every radius, for the centre one radius behind
// it along its gradient. Votes are splatted bilinearly; each radius slice is
// smoothed with a 3x3 binomial kernel and normalised by the radius.
CircleHit circle_hough(const std::vector<EdgePoint>& points, const CircleSearch& search) {
  const Region& reg = search.centres;
  const std::size_t h = reg.r1 - reg.r0;
  const std::size_t w = reg.c1 - reg.c0;
  const int nr = search.max_radius - search.min_radius + 1;
  std::vector<float> acc(static_cast<std::size_t>(nr) * h * w, 0.0f);

  for (const auto& p : points) {
    for (int k = 0; k < nr; ++k) {
      const double r = search.min_radius + k;
      const double x = p.x - r * p.ux - static_cast<double>(reg.c0);
      const double y = p.y - r * p.uy - static_cast<double>(reg.r0);
      if (x < 0 || y < 0) continue;
      const auto x0 = static_cast<std::size_t>(x);
      const auto y0 = static_cast<std::size_t>(y);
      if (x0 + 1 >= w || y0 + 1 >= h) continue;
      const float fx = static_cast<float>(x - x0);
      const float fy = static_cast<float>(y - y0);
      float* slice = acc.data() + static_cast<std::size_t>(k) * h * w;
      slice[y0 * w + x0] += (1 - fx) * (1 - fy);
      slice[y0 * w + x0 + 1] += fx * (1 - fy);
      slice[(y0 + 1) * w + x0] += (1 - fx) * fy;
      slice[(y0 + 1) * w + x0 + 1] += fx * fy;
    }
  }

  double best = -1;
  Circle best_circle{};
  for (int k = 0; k < nr; ++k) {
    const float* slice = acc.data() + static_cast<std::size_t>(k) * h * w;
    const double r = search.min_radius + k;
    for (std::size_t y = 1; y + 1 < h; ++y) {
      for (std::size_t x = 1; x + 1 < w; ++x) {
        const double s =
            (4.0 * slice[y * w + x] + 2.0 * (slice[(y - 1) * w + x] + slice[(y + 1) * w + x] +
                                   slice[y * w + x - 1] + slice[y * w + x + 1]) +
             slice[(y - 1) * w + x - 1] + slice[(y - 1) * w + x + 1] +
             slice[(y + 1) * w + x - 1] + slice[(y + 1) * w + x + 1]) /
            16.0 / r;
        if (s <= best) continue;
        const double cx = static_cast<double>(reg.c0 + x);
        const double cy = static_cast<double>(reg.r0 + y);
        if (search.disc_r >= 0 && std::hypot(cx - search.disc_cx, cy - search.disc_cy) > search.disc_r) {
          continue;
        }
        best = s;
        best_circle = {cx, cy, r};
      }
    }
  }
  if (best <= 0) return {};
  return {best_circle, circle_support(points, best_circle)};
}

struct LineHit {
  Line line;
  double votes = 0;
};

// Linear Hough over near-horizontal lines (normal angle 45..135 degrees).
std::optional<LineHit> line_hough(const std::vector<EdgePoint>& points, const Region& region) {
  if (points.empty() || region.empty()) return std::nullopt;
  const double w = static_cast<double>(region.c1 - region.c0);
  const double h = static_cast<double>(region.r1 - region.r0);
  const int rho_max = static_cast<int>(std::ceil(std::hypot(w, h))) + 1;
  const int rho_bins = 2 * rho_max + 1;
  constexpr int kMinAngle = 45;
  constexpr int kMaxAngle = 135;
  std::vector<int> acc(static_cast<std::size_t>(kMaxAngle - kMinAngle + 1) * rho_bins, 0);
  std::vector<double> cosines, sines;
  for (int a = kMinAngle; a <= kMaxAngle; ++a) {
    const double t = a * std::numbers::pi / 180.0;
    cosines.push_back(std::cos(t));
    sines.push_back(std::sin(t));
  }
  for (const auto& p : points) {
    const double x = p.x - static_cast<double>(region.c0);
    const double y = p.y - static_cast<double>(region.r0);
    for (std::size_t a = 0; a < cosines.size(); ++a) {
      const int rho = static_cast<int>(std::lround(x * cosines[a] + y * sines[a]));
      ++acc[a * rho_bins + static_cast<std::size_t>(rho + rho_max)];
    }
  }
  const auto it = std::max_element(acc.begin(), acc.end());
  const auto idx = static_cast<std::size_t>(it - acc.begin());
  const std::size_t a = idx / rho_bins;
  const double rho = static_cast<double>(static_cast<int>(idx % rho_bins) - rho_max);
  const double ct = cosines[a];
  const double st = sines[a];
  Line line;
  line.slope = -ct / st;
  line.intercept = static_cast<double>(region.r0) + (rho + static_cast<double>(region.c0) * ct) / st;
  return LineHit{line, static_cast<double>(*it)};
}

Region clip(long r0, long r1, long c0, long c1, std::size_t rows, std::size_t cols) {
  auto lim = [](long v, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<long>(v, 0, static_cast<long>(n)));
  };
  return {lim(r0, rows), lim(r1, rows), lim(c0, cols), lim(c1, cols)};
}

std::optional<Line> find_eyelid(const Gradient& g, const SegmentationParams& params,
                                const Region& region) {
  if (region.empty()) return std::nullopt;
  const auto points = edge_points(g, {0.0, 1.0}, params.edge_high, params.edge_low, region);
  const auto hit = line_hough(points, region);
  if (!hit) return std::nullopt;
  if (hit->votes < params.min_eyelid_support * static_cast<double>(region.c1 - region.c0)) {
    return std::nullopt;
  }
  return hit->line;
}

}  // namespace

void validate(const SegmentationParams& p) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidArgument, "segmentation parameters: " + why);
  };
  if (p.pupil_min_radius < 1 || p.pupil_min_radius > p.pupil_max_radius) {
    fail("pupil radius range is empty");
  }
  if (p.iris_min_radius > p.iris_max_radius) fail("iris radius range is empty");
  if (p.pupil_max_radius >= p.iris_min_radius) fail("pupil radius range must lie below iris range");
  if (p.eyelash_threshold < 0 || p.eyelash_threshold > 255) fail("eyelash threshold outside 0..255");
  if (!(p.edge_low > 0 && p.edge_low <= p.edge_high && p.edge_high <= 1)) {
    fail("edge thresholds must satisfy 0 < low <= high <= 1");
  }
  if (p.smoothing_sigma < 0) fail("smoothing sigma is negative");
  if (p.min_circle_support < 0 || p.min_eyelid_support < 0) fail("support floors are negative");
  if (p.max_pupil_offset < 0 || p.max_pupil_offset >= 1) fail("pupil offset must be in [0, 1)");
  if (p.min_image_dim < 3 || p.min_image_dim > p.max_image_dim) fail("image bounds are empty");
}

SegmentationResult segment(const GrayImage& eye, const SegmentationParams& params) {
  validate(params);
  const std::size_t rows = eye.rows();
  const std::size_t cols = eye.cols();
  if (rows < params.min_image_dim || cols < params.min_image_dim || rows > params.max_image_dim ||
      cols > params.max_image_dim) {
    throw Error(ErrorCode::kInvalidArgument,
                "eye image " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " outside configured bounds [" + std::to_string(params.min_image_dim) + ", " +
                    std::to_string(params.max_image_dim) + "]");
  }

  const Plane smooth = gaussian_blur(to_plane(eye), params.smoothing_sigma);
  const Gradient grad = sobel(smooth);
  const Region whole{0, rows, 0, cols};

  const auto iris_edges =
      edge_points(grad, params.iris_weights, params.edge_high, params.edge_low, whole);
  const CircleHit iris = circle_hough(iris_edges, {params.iris_min_radius, params.iris_max_radius, whole});
  if (iris.support <= 0 || iris.support < params.min_circle_support) {
    throw SegmentationError(Boundary::kIris, "segmentation failed: no iris boundary above the vote floor");
  }

  const Circle& ic = iris.circle;
  const Region iris_box = clip(static_cast<long>(std::floor(ic.cy - ic.r)),
                               static_cast<long>(std::ceil(ic.cy + ic.r)) + 1,
                               static_cast<long>(std::floor(ic.cx - ic.r)),
                               static_cast<long>(std::ceil(ic.cx + ic.r)) + 1, rows, cols);
  auto pupil_edges =
      edge_points(grad, params.pupil_weights, params.edge_high, params.edge_low, iris_box);
  std::erase_if(pupil_edges, [&](const EdgePoint& p) {
    return std::hypot(p.x - ic.cx, p.y - ic.cy) >= 0.95 * ic.r;
  });
  const int pupil_max = std::min(params.pupil_max_radius, static_cast<int>(ic.r) - 1);
  const double offset = params.max_pupil_offset * ic.r;
  CircleHit pupil;
  if (pupil_max >= params.pupil_min_radius) {
    CircleSearch search{params.pupil_min_radius, pupil_max,
                        clip(static_cast<long>(ic.cy - offset) - 1,
                             static_cast<long>(ic.cy + offset) + 2,
                             static_cast<long>(ic.cx - offset) - 1,
                             static_cast<long>(ic.cx + offset) + 2, rows, cols)};
    search.disc_cx = ic.cx;
    search.disc_cy = ic.cy;
    search.disc_r = offset;
    if (!search.centres.empty()) pupil = circle_hough(pupil_edges, search);
  }
  if (pupil.support <= 0 || pupil.support < params.min_circle_support) {
    throw SegmentationError(Boundary::kPupil, "segmentation failed: no pupil boundary above the vote floor");
  }

  SegmentationResult result;
  result.iris = iris.circle;
  result.pupil = pupil.circle;
  const Circle& pc = result.pupil;

  if (params.detect_eyelids) {
    result.upper_eyelid = find_eyelid(
        grad, params,
        clip(static_cast<long>(ic.cy - ic.r), static_cast<long>(pc.cy - pc.r) - 2,
             static_cast<long>(ic.cx - ic.r), static_cast<long>(ic.cx + ic.r) + 1, rows, cols));
    result.lower_eyelid = find_eyelid(
        grad, params,
        clip(static_cast<long>(pc.cy + pc.r) + 3, static_cast<long>(ic.cy + ic.r) + 1,
             static_cast<long>(ic.cx - ic.r), static_cast<long>(ic.cx + ic.r) + 1, rows, cols));
  }

  result.noise = BitMatrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = static_cast<double>(c);
      const double y = static_cast<double>(r);
      bool noisy = false;
      if (result.upper_eyelid && y < result.upper_eyelid->y_at(x)) noisy = true;
      if (result.lower_eyelid && y > result.lower_eyelid->y_at(x)) noisy = true;
      if (!noisy && eye.at(r, c) < params.eyelash_threshold &&
          std::hypot(x - pc.cx, y - pc.cy) > pc.r + 1.0) {
        noisy = true;
      }
      if (noisy) result.noise.set(r, c, true);
    }
  }
  return result;
}

}  // namespace irisvc::iris
