#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Byte-per-bit kernels behind BitMatrix and template matching. Every
// operand holds only 0/1 values. A scalar reference implementation is always
// built; AVX2 (x86-64) and NEON (aarch64) variants are compiled when the
// toolchain allows and selected at runtime. Setting IRISVC_ISA=scalar|avx2|neon
// in the environment pins the choice (unavailable requests fall back to
// scalar).
namespace irisvc::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

struct MaskedCount {
  std::size_t disagreements = 0;  // bits where a != b and neither is masked
  std::size_t valid = 0;          // bits where neither is masked
  friend bool operator==(const MaskedCount&, const MaskedCount&) = default;
};

struct KernelTable {
  Isa isa;
  void (*xor_bits)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
  void (*or_bits)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
  void (*not_bits)(const std::uint8_t* in, std::uint8_t* out, std::size_t n);
  std::size_t (*count_ones)(const std::uint8_t* in, std::size_t n);
  MaskedCount (*masked_disagreement)(const std::uint8_t* a, const std::uint8_t* b,
                                     const std::uint8_t* mask_a, const std::uint8_t* mask_b,
                                     std::size_t n);
};

// ISAs compiled in and supported by the running CPU; scalar is always first.
std::vector<Isa> available_isas();
// nullptr when the ISA is not available.
const KernelTable* table_for(Isa isa);
// The table chosen for this process.
const KernelTable& active();

// Convenience wrappers over active(). Output spans must match input sizes.
void xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
              std::span<std::uint8_t> out);
void or_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
             std::span<std::uint8_t> out);
void not_bits(std::span<const std::uint8_t> in, std::span<std::uint8_t> out);
std::size_t count_ones(std::span<const std::uint8_t> in);
MaskedCount masked_disagreement(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                std::span<const std::uint8_t> mask_a,
                                std::span<const std::uint8_t> mask_b);

}  // namespace irisvc::kernels
