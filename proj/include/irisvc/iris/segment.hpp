#pragma once

#include <cstddef>
#include <optional>

#include "irisvc/bit_matrix.hpp"
#include "irisvc/error.hpp"
#include "irisvc/gray_image.hpp"

namespace irisvc::iris {

struct Circle {
  double cx = 0;  // column
  double cy = 0;  // row
  double r = 0;
};

// y = slope * x + intercept, image coordinates (x = column, y = row).
struct Line {
  double slope = 0;
  double intercept = 0;
  double y_at(double x) const { return slope * x + intercept; }
};

struct SegmentationResult {
  Circle iris;
  Circle pupil;
  std::optional<Line> upper_eyelid;
  std::optional<Line> lower_eyelid;
  BitMatrix noise;  // eye-image sized; 1 = occluded
};

// Weights applied to the x and y Sobel responses when selecting edge
// pixels. The direction used for voting is always the unweighted gradient.
struct GradientWeights {
  double x = 1.0;
  double y = 1.0;
};

struct SegmentationParams {
  int pupil_min_radius = 25;
  int pupil_max_radius = 75;
  int iris_min_radius = 80;
  int iris_max_radius = 150;
  // Pixels darker than this (outside the pupil) are treated as eyelashes.
  int eyelash_threshold = 80;

  double smoothing_sigma = 1.0;
  // Hysteresis thresholds as fractions of the largest weighted gradient.
  double edge_high = 0.20;
  double edge_low = 0.10;
  // The iris boundary favours vertical edges (horizontal gradient) so that
  // eyelids contribute fewer votes.
  GradientWeights iris_weights{1.0, 0.5};
  GradientWeights pupil_weights{1.0, 1.0};

  // Minimum fraction of a circle's circumference that must vote for it.
  double min_circle_support = 0.25;
  // Minimum eyelid line votes as a fraction of the search-region width.
  double min_eyelid_support = 0.35;
  // Pupil centre may sit at most this fraction of the iris radius away from
  // the iris centre.
  double max_pupil_offset = 0.35;
  bool detect_eyelids = true;

  std::size_t min_image_dim = 32;
  std::size_t max_image_dim = 2048;
};

// Throws kInvalidArgument describing the first violated constraint.
void validate(const SegmentationParams& params);

enum class Boundary { kIris, kPupil };

class SegmentationError : public Error {
 public:
  SegmentationError(Boundary boundary, const std::string& message)
      : Error(ErrorCode::kSegmentationFailed, message), boundary_(boundary) {}
  Boundary boundary() const noexcept { return boundary_; }

 private:
  Boundary boundary_;
};

// Circular Hough transform for the iris then the pupil, linear Hough for the
// eyelids, intensity threshold for eyelashes.
SegmentationResult segment(const GrayImage& eye, const SegmentationParams& params = {});

}  // namespace irisvc::iris
