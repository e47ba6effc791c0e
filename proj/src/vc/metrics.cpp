#include <cstdint>
#include <string>

#include "codebook.hpp"
#include "irisvc/error.hpp"
#include "irisvc/vc.hpp"

namespace irisvc::vc {
namespace {

void accumulate(std::vector<std::uint32_t>& counts, const BitMatrix& share) {
  const auto bits = share.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) counts[i] += bits[i];
}

std::vector<double> to_frequency(const std::vector<std::uint32_t>& counts, std::size_t trials) {
  std::vector<double> freq(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  }
  return freq;
}

}  // namespace

SecrecyMap measure_secrecy(Scheme scheme, const BitMatrix& image1, const BitMatrix& image2,
                           std::size_t trials, Rng& rng) {
  if (trials < 1000) {
    throw Error(ErrorCode::kInvalidArgument,
                "measure_secrecy: need at least 1000 trials, got " + std::to_string(trials));
  }
  SecrecyMap map;
  map.trials = trials;
  map.rows = image1.rows();
  map.cols = scheme == Scheme::kNaorShamir ? image1.cols() * 2 : image1.cols();
  std::vector<std::uint32_t> first(map.rows * map.cols, 0);
  std::vector<std::uint32_t> second(map.rows * map.cols, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    if (scheme == Scheme::kNaorShamir) {
      const NsSharePair pair = ns_encrypt(image1, rng);
      accumulate(first, pair.share_a);
      accumulate(second, pair.share_b);
    } else {
      const FangSharePair pair = fang_encrypt(image1, image2, rng);
      accumulate(first, pair.share1);
      accumulate(second, pair.share2);
    }
  }
  map.first = to_frequency(first, trials);
  map.second = to_frequency(second, trials);
  return map;
}

ContrastExpansion contrast_and_expansion(Scheme scheme) {
  // Mean stacked weight per secret colour, averaged over the equally likely
  // random choices of the encoding rule.
  double weight[2] = {0.0, 0.0};
  double expansion = 0.0;
  for (int colour = 0; colour < 2; ++colour) {
    for (int choice = 0; choice < 2; ++choice) {
      if (scheme == Scheme::kNaorShamir) {
        const auto sub = detail::ns_pixel(colour == 1, choice == 1);
        expansion = static_cast<double>(sub.a.size());
        weight[colour] += (sub.a[0] | sub.b[0]) + (sub.a[1] | sub.b[1]);
      } else {
        const auto px = detail::fang_pixel(colour == 1, choice == 1);
        expansion = 1.0;
        weight[colour] += px.share1 | px.share2;
      }
    }
    weight[colour] /= 2.0;
  }
  return {expansion, (weight[1] - weight[0]) / expansion};
}

}  // namespace irisvc::vc
