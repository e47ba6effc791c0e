#include <arm_neon.h>

#include "backends.hpp"

namespace irisvc::kernels::detail {
namespace {

constexpr std::size_t kLanes = 16;

// Widening add of 16 bytes into two 64-bit lanes; no overflow for 0/1 input.
inline uint64x2_t widen_sum(uint64x2_t acc, uint8x16_t v) {
  return vpadalq_u32(acc, vpaddlq_u16(vpaddlq_u8(v)));
}

void xor_neon(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_u8(out + i, veorq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  for (; i < n; ++i) out[i] = a[i] ^ b[i];
}

void or_neon(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_u8(out + i, vorrq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void not_neon(const std::uint8_t* in, std::uint8_t* out, std::size_t n) {
  const uint8x16_t ones = vdupq_n_u8(1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_u8(out + i, veorq_u8(vld1q_u8(in + i), ones));
  for (; i < n; ++i) out[i] = in[i] ^ 1u;
}

std::size_t count_neon(const std::uint8_t* in, std::size_t n) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = widen_sum(acc, vld1q_u8(in + i));
  std::size_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) total += in[i];
  return total;
}

MaskedCount masked_neon(const std::uint8_t* a, const std::uint8_t* b, const std::uint8_t* mask_a,
                        const std::uint8_t* mask_b, std::size_t n) {
  const uint8x16_t ones = vdupq_n_u8(1);
  uint64x2_t acc_valid = vdupq_n_u64(0);
  uint64x2_t acc_diff = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint8x16_t valid = veorq_u8(vorrq_u8(vld1q_u8(mask_a + i), vld1q_u8(mask_b + i)), ones);
    const uint8x16_t diff = vandq_u8(veorq_u8(vld1q_u8(a + i), vld1q_u8(b + i)), valid);
    acc_valid = widen_sum(acc_valid, valid);
    acc_diff = widen_sum(acc_diff, diff);
  }
  MaskedCount result{vgetq_lane_u64(acc_diff, 0) + vgetq_lane_u64(acc_diff, 1),
                     vgetq_lane_u64(acc_valid, 0) + vgetq_lane_u64(acc_valid, 1)};
  for (; i < n; ++i) {
    const unsigned valid = (mask_a[i] | mask_b[i]) ^ 1u;
    result.valid += valid;
    result.disagreements += (a[i] ^ b[i]) & valid;
  }
  return result;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{Isa::kNeon, xor_neon, or_neon, not_neon, count_neon, masked_neon};
  return table;
}

}  // namespace irisvc::kernels::detail
