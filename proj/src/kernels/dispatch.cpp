#include <cstdlib>
#include <string>

#include "backends.hpp"
#include "irisvc/error.hpp"

namespace irisvc::kernels {
namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(IRISVC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(IRISVC_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select() {
  const auto isas = available_isas();
  if (const char* forced = std::getenv("IRISVC_ISA")) {
    const std::string want(forced);
    for (Isa isa : isas) {
      if (isa_name(isa) == want) return *table_for(isa);
    }
    return detail::scalar_table();
  }
  return *table_for(isas.back());
}

void require_len(std::size_t expected, std::size_t actual) {
  if (expected != actual) {
    throw Error(ErrorCode::kDimensionMismatch, "kernel operands differ in length");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> isas{Isa::kScalar};
  if (cpu_has(Isa::kAvx2)) isas.push_back(Isa::kAvx2);
  if (cpu_has(Isa::kNeon)) isas.push_back(Isa::kNeon);
  return isas;
}

const KernelTable* table_for(Isa isa) {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::kScalar:
      return &detail::scalar_table();
    case Isa::kAvx2:
#if defined(IRISVC_HAVE_AVX2)
      return &detail::avx2_table();
#else
      return nullptr;
#endif
    case Isa::kNeon:
#if defined(IRISVC_HAVE_NEON)
      return &detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

void xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
              std::span<std::uint8_t> out) {
  require_len(a.size(), b.size());
  require_len(a.size(), out.size());
  active().xor_bits(a.data(), b.data(), out.data(), a.size());
}

void or_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
             std::span<std::uint8_t> out) {
  require_len(a.size(), b.size());
  require_len(a.size(), out.size());
  active().or_bits(a.data(), b.data(), out.data(), a.size());
}

void not_bits(std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
  require_len(in.size(), out.size());
  active().not_bits(in.data(), out.data(), in.size());
}

std::size_t count_ones(std::span<const std::uint8_t> in) {
  return active().count_ones(in.data(), in.size());
}

MaskedCount masked_disagreement(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                std::span<const std::uint8_t> mask_a,
                                std::span<const std::uint8_t> mask_b) {
  require_len(a.size(), b.size());
  require_len(a.size(), mask_a.size());
  require_len(a.size(), mask_b.size());
  return active().masked_disagreement(a.data(), b.data(), mask_a.data(), mask_b.data(), a.size());
}

}  // namespace irisvc::kernels
