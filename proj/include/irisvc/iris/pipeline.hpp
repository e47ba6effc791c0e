#pragma once

#include "irisvc/gray_image.hpp"
#include "irisvc/iris/encode.hpp"
#include "irisvc/iris/match.hpp"
#include "irisvc/iris/normalize.hpp"
#include "irisvc/iris/segment.hpp"
#include "irisvc/iris/template.hpp"

namespace irisvc::iris {

struct PipelineParams {
  SegmentationParams segmentation;
  LogGaborParams log_gabor;
};

struct PipelineTrace {
  SegmentationResult segmentation;
  NormalizedIris normalized;
  IrisTemplate iris_template;
};

PipelineTrace run_pipeline(const GrayImage& eye, const PipelineParams& params = {});
IrisTemplate extract_template(const GrayImage& eye, const PipelineParams& params = {});

// Eye image with the detected circles, eyelid lines and noise drawn in.
GrayImage render_segmentation(const GrayImage& eye, const SegmentationResult& seg);

}  // namespace irisvc::iris
