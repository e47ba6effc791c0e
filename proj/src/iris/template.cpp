#include "irisvc/iris/template.hpp"

#include <string>

#include "irisvc/error.hpp"

namespace irisvc::iris {
namespace {

void require_template_dims(const BitMatrix& m, const char* what) {
  if (m.rows() != kTemplateRows || m.cols() != kTemplateCols) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " + std::to_string(kTemplateRows) +
                    "x" + std::to_string(kTemplateCols));
  }
}

}  // namespace

void validate(const IrisTemplate& t) {
  require_template_dims(t.bits, "template bits");
  require_template_dims(t.mask, "template mask");
}

BitMatrix template_to_image(const IrisTemplate& t) {
  validate(t);
  return t.bits;
}

IrisTemplate image_to_template(const BitMatrix& image, const BitMatrix& mask) {
  IrisTemplate t{image, mask};
  validate(t);
  return t;
}

BitMatrix rotate_samples(const BitMatrix& m, int shift) {
  if (m.cols() % kBitsPerSample != 0) {
    throw Error(ErrorCode::kInvalidArgument, "rotate: column count must be even");
  }
  const long samples = static_cast<long>(m.cols() / kBitsPerSample);
  const long offset =
      ((static_cast<long>(shift) % samples) + samples) % samples * static_cast<long>(kBitsPerSample);
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto src = m.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      dst[(c + static_cast<std::size_t>(offset)) % m.cols()] = src[c];
    }
  }
  return out;
}

IrisTemplate rotate(const IrisTemplate& t, int shift) {
  return {rotate_samples(t.bits, shift), rotate_samples(t.mask, shift)};
}

}  // namespace irisvc::iris
