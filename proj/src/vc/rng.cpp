#include "irisvc/rng.hpp"

namespace irisvc {

Rng Rng::from_entropy() {
  std::random_device device;
  const std::uint64_t hi = device();
  const std::uint64_t lo = device();
  return Rng((hi << 32) ^ lo);
}

}  // namespace irisvc
