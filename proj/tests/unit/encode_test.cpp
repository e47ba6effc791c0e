#include "irisvc/iris/encode.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irisvc/iris/pipeline.hpp"
#include "synthetic_eye.hpp"

namespace irisvc::iris {
namespace {

TEST(LogGabor, GainAtCentreAndDc) {
  const LogGaborParams p;
  EXPECT_EQ(log_gabor_gain(0.0, p), 0.0);
  EXPECT_DOUBLE_EQ(log_gabor_gain(1.0 / p.wavelength, p), 1.0);
  // Independent evaluation of the transfer function.
  const double f = 0.1;
  const double want = std::exp(-std::pow(std::log(f * 18.0), 2) / (2 * std::pow(std::log(0.5), 2)));
  EXPECT_NEAR(log_gabor_gain(f, p), want, 1e-15);
}

TEST(LogGabor, FilterIsOneSidedAndDcFree) {
  const auto h = log_gabor_filter(kAngularSamples, {});
  ASSERT_EQ(h.size(), kAngularSamples);
  const double peak = *std::max_element(h.begin(), h.end());
  EXPECT_LT(std::abs(h[0]), 1e-12 * peak);
  for (std::size_t k = kAngularSamples / 2 + 1; k < kAngularSamples; ++k) EXPECT_EQ(h[k], 0.0);
  for (std::size_t k = 1; k <= kAngularSamples / 2; ++k) EXPECT_GT(h[k], 0.0);
}

TEST(LogGabor, ValidatesParams) {
  EXPECT_THROW(validate(LogGaborParams{0.0, 0.5}), Error);
  EXPECT_THROW(validate(LogGaborParams{18.0, 1.0}), Error);
  EXPECT_THROW(validate(LogGaborParams{18.0, 0.0}), Error);
  EXPECT_NO_THROW(validate(LogGaborParams{}));
}

TEST(Encode, ConstantRowsAreFullyMasked) {
  NormalizedIris n;
  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      n.at(i, j) = i % 2 == 0 ? 117.0 : 117.0 + 5.0 * std::sin(0.3 * static_cast<double>(j));
    }
  }
  const auto t = encode_features(n);
  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    std::size_t masked = 0;
    for (std::size_t c = 0; c < kTemplateCols; ++c) masked += t.mask.at(i, c);
    if (i % 2 == 0) {
      EXPECT_EQ(masked, kTemplateCols) << "row " << i;
    } else {
      EXPECT_EQ(masked, 0u) << "row " << i;
    }
  }
}

// A cosine at DFT bin k passes only its positive-frequency half through the
// one-sided filter, so the response is (A/2) G(k/n) exp(i(2 pi k j / n + phi)):
// its real and imaginary signs follow cos and sin of the input phase.
TEST(Encode, SinusoidMatchesClosedFormPhase) {
  const std::size_t k = 13;
  const double phi = 0.1;
  NormalizedIris n;
  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      const double w = 2.0 * std::numbers::pi * static_cast<double>(k * j) / kAngularSamples;
      n.at(i, j) = 100.0 + 20.0 * std::cos(w + phi);
    }
  }
  const auto t = encode_features(n);
  EXPECT_EQ(t.mask.count_black(), 0u);
  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      const double w = 2.0 * std::numbers::pi * static_cast<double>(k * j) / kAngularSamples + phi;
      ASSERT_EQ(t.bits.at(i, 2 * j), std::cos(w) >= 0 ? 1 : 0) << i << "," << j;
      ASSERT_EQ(t.bits.at(i, 2 * j + 1), std::sin(w) >= 0 ? 1 : 0) << i << "," << j;
    }
  }
}

TEST(Encode, MaskedSamplesMaskBothBits) {
  NormalizedIris n;
  for (std::size_t j = 0; j < kAngularSamples; ++j) {
    for (std::size_t i = 0; i < kRadialSamples; ++i) n.at(i, j) = 80.0 + 30.0 * std::sin(0.4 * j + i);
  }
  n.mask.set(3, 7, true);
  const auto t = encode_features(n);
  EXPECT_EQ(t.mask.at(3, 14), 1);
  EXPECT_EQ(t.mask.at(3, 15), 1);
  for (std::size_t i = 0; i < kRadialSamples; ++i) {
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      EXPECT_EQ(t.mask.at(i, 2 * j), t.mask.at(i, 2 * j + 1));
    }
  }
}

TEST(Encode, FullyMaskedRowStaysMasked) {
  NormalizedIris n;
  for (std::size_t j = 0; j < kAngularSamples; ++j) {
    for (std::size_t i = 0; i < kRadialSamples; ++i) n.at(i, j) = 50.0 + 40.0 * std::cos(0.5 * j);
    n.mask.set(0, j, true);
  }
  const auto t = encode_features(n);
  for (std::size_t c = 0; c < kTemplateCols; ++c) EXPECT_EQ(t.mask.at(0, c), 1);
}

TEST(Encode, PipelineIsDeterministicAndShaped) {
  const GrayImage eye = testing::render_eye(testing::EyeSpec{});
  const auto a = extract_template(eye);
  const auto b = extract_template(eye);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.bits.rows(), kTemplateRows);
  EXPECT_EQ(a.bits.cols(), kTemplateCols);
  EXPECT_EQ(a.mask.rows(), kTemplateRows);
  EXPECT_EQ(a.mask.cols(), kTemplateCols);
}

TEST(Encode, DistinctTexturesGiveDistantTemplates) {
  testing::EyeSpec s1, s2;
  s2.texture_seed = 99;
  const auto a = extract_template(testing::render_eye(s1));
  const auto b = extract_template(testing::render_eye(s2));
  const auto m = hamming_distance(a, b);
  EXPECT_GT(m.distance, 0.4);
}

}  // namespace
}  // namespace irisvc::iris
