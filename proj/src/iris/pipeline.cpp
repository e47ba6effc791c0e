#include "irisvc/iris/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace irisvc::iris {
namespace {

void plot(GrayImage& img, double x, double y, std::uint8_t value) {
  const long c = std::lround(x);
  const long r = std::lround(y);
  if (r < 0 || c < 0 || r >= static_cast<long>(img.rows()) || c >= static_cast<long>(img.cols())) {
    return;
  }
  img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = value;
}

void draw_circle(GrayImage& img, const Circle& circle, std::uint8_t value) {
  const int steps = std::max(64, static_cast<int>(8.0 * circle.r));
  for (int k = 0; k < steps; ++k) {
    const double t = 2.0 * std::numbers::pi * k / steps;
    plot(img, circle.cx + circle.r * std::cos(t), circle.cy + circle.r * std::sin(t), value);
  }
}

void draw_line(GrayImage& img, const Line& line, std::uint8_t value) {
  for (std::size_t c = 0; c < img.cols(); ++c) {
    plot(img, static_cast<double>(c), line.y_at(static_cast<double>(c)), value);
  }
}

}  // namespace

PipelineTrace run_pipeline(const GrayImage& eye, const PipelineParams& params) {
  PipelineTrace trace;
  trace.segmentation = segment(eye, params.segmentation);
  trace.normalized = normalize(eye, trace.segmentation);
  trace.iris_template = encode_features(trace.normalized, params.log_gabor);
  return trace;
}

IrisTemplate extract_template(const GrayImage& eye, const PipelineParams& params) {
  return run_pipeline(eye, params).iris_template;
}

GrayImage render_segmentation(const GrayImage& eye, const SegmentationResult& seg) {
  GrayImage out = eye;
  if (seg.noise.rows() == eye.rows() && seg.noise.cols() == eye.cols()) {
    for (std::size_t r = 0; r < eye.rows(); ++r) {
      for (std::size_t c = 0; c < eye.cols(); ++c) {
        if (seg.noise.at(r, c)) out.at(r, c) = static_cast<std::uint8_t>(out.at(r, c) / 2);
      }
    }
  }
  draw_circle(out, seg.iris, 255);
  draw_circle(out, seg.pupil, 255);
  if (seg.upper_eyelid) draw_line(out, *seg.upper_eyelid, 255);
  if (seg.lower_eyelid) draw_line(out, *seg.lower_eyelid, 255);
  return out;
}

}  // namespace irisvc::iris
