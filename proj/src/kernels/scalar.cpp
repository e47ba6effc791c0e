#include "backends.hpp"

namespace irisvc::kernels::detail {
namespace {

void xor_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] ^ b[i];
}

void or_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void not_scalar(const std::uint8_t* in, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] ^ 1u;
}

std::size_t count_scalar(const std::uint8_t* in, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += in[i];
  return total;
}

MaskedCount masked_scalar(const std::uint8_t* a, const std::uint8_t* b, const std::uint8_t* mask_a,
                          const std::uint8_t* mask_b, std::size_t n) {
  MaskedCount result;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned valid = (mask_a[i] | mask_b[i]) ^ 1u;
    result.valid += valid;
    result.disagreements += (a[i] ^ b[i]) & valid;
  }
  return result;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, xor_scalar, or_scalar, not_scalar, count_scalar,
                                 masked_scalar};
  return table;
}

}  // namespace irisvc::kernels::detail
