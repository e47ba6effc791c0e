#include <immintrin.h>

#include "backends.hpp"

namespace irisvc::kernels::detail {
namespace {

constexpr std::size_t kLanes = 32;

inline __m256i load(const std::uint8_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(std::uint8_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Sum of the four 64-bit lanes.
inline std::size_t reduce_u64(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::size_t>(_mm_cvtsi128_si64(s)) +
         static_cast<std::size_t>(_mm_extract_epi64(s, 1));
}

void xor_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(out + i, _mm256_xor_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] ^ b[i];
}

void or_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(out + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void not_avx2(const std::uint8_t* in, std::uint8_t* out, std::size_t n) {
  const __m256i ones = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(out + i, _mm256_xor_si256(load(in + i), ones));
  for (; i < n; ++i) out[i] = in[i] ^ 1u;
}

std::size_t count_avx2(const std::uint8_t* in, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_epi64(acc, _mm256_sad_epu8(load(in + i), zero));
  std::size_t total = reduce_u64(acc);
  for (; i < n; ++i) total += in[i];
  return total;
}

MaskedCount masked_avx2(const std::uint8_t* a, const std::uint8_t* b, const std::uint8_t* mask_a,
                        const std::uint8_t* mask_b, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i ones = _mm256_set1_epi8(1);
  __m256i acc_valid = zero;
  __m256i acc_diff = zero;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i valid = _mm256_xor_si256(_mm256_or_si256(load(mask_a + i), load(mask_b + i)), ones);
    const __m256i diff = _mm256_and_si256(_mm256_xor_si256(load(a + i), load(b + i)), valid);
    acc_valid = _mm256_add_epi64(acc_valid, _mm256_sad_epu8(valid, zero));
    acc_diff = _mm256_add_epi64(acc_diff, _mm256_sad_epu8(diff, zero));
  }
  MaskedCount result{reduce_u64(acc_diff), reduce_u64(acc_valid)};
  for (; i < n; ++i) {
    const unsigned valid = (mask_a[i] | mask_b[i]) ^ 1u;
    result.valid += valid;
    result.disagreements += (a[i] ^ b[i]) & valid;
  }
  return result;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::kAvx2, xor_avx2, or_avx2, not_avx2, count_avx2, masked_avx2};
  return table;
}

}  // namespace irisvc::kernels::detail
