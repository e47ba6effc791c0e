#include "irisvc/iris/template.hpp"

#include <gtest/gtest.h>

#include "irisvc/error.hpp"
#include "irisvc/rng.hpp"

namespace irisvc::iris {
namespace {

IrisTemplate random_template(Rng& rng) {
  IrisTemplate t{BitMatrix(kTemplateRows, kTemplateCols), BitMatrix(kTemplateRows, kTemplateCols)};
  for (auto& b : t.bits.bits()) b = rng.next_bit();
  for (std::size_t r = 0; r < kTemplateRows; ++r) {
    for (std::size_t j = 0; j < kAngularSamples; ++j) {
      const bool m = rng.uniform(10) == 0;
      t.mask.set(r, 2 * j, m);
      t.mask.set(r, 2 * j + 1, m);
    }
  }
  return t;
}

TEST(Template, ImageRoundTrip) {
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const IrisTemplate t = random_template(rng);
    const BitMatrix img = template_to_image(t);
    EXPECT_EQ(img, t.bits);
    ASSERT_EQ(image_to_template(img, t.mask), t);
  }
  const IrisTemplate zero{BitMatrix(20, 480), BitMatrix(20, 480)};
  EXPECT_EQ(template_to_image(zero), BitMatrix::white(20, 480));
}

TEST(Template, RejectsWrongDimensions) {
  EXPECT_THROW(image_to_template(BitMatrix(20, 479), BitMatrix(20, 480)), Error);
  EXPECT_THROW(image_to_template(BitMatrix(20, 480), BitMatrix(10, 480)), Error);
  EXPECT_THROW(validate(IrisTemplate{BitMatrix(21, 480), BitMatrix(21, 480)}), Error);
}

TEST(Template, RotationMovesSamplePairs) {
  BitMatrix m(1, 8);
  m.set(0, 0, true);
  m.set(0, 1, true);
  m.set(0, 7, true);
  const BitMatrix r = rotate_samples(m, 1);
  EXPECT_EQ(r, BitMatrix(1, 8, std::vector<std::uint8_t>{0, 1, 1, 1, 0, 0, 0, 0}));
  EXPECT_EQ(rotate_samples(r, -1), m);
  EXPECT_EQ(rotate_samples(m, 4), m);
  EXPECT_EQ(rotate_samples(m, -9), rotate_samples(m, -1));
  EXPECT_THROW(rotate_samples(BitMatrix(1, 7), 1), Error);
}

TEST(Template, RotationComposes) {
  Rng rng(2);
  const IrisTemplate t = random_template(rng);
  EXPECT_EQ(rotate(rotate(t, 5), -5), t);
  EXPECT_EQ(rotate(rotate(t, 3), 4), rotate(t, 7));
  EXPECT_EQ(rotate(t, static_cast<int>(kAngularSamples)), t);
}

}  // namespace
}  // namespace irisvc::iris
