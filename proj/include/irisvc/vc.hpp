#pragma once

#include <cstddef>
#include <vector>

#include "irisvc/bit_matrix.hpp"
#include "irisvc/rng.hpp"

// Visual secret sharing.
//
// Naor-Shamir (2,2): each secret pixel becomes a horizontal pair of
// subpixels in each share, one black and one white. White pixels get the
// same pair in both shares, black pixels get complementary pairs, so the
// OR-stack shows one black subpixel for white and two for black.
//
// Two-secret non-expansion scheme: shares are the size of the secrets. The
// upper half of share 1 is random; everything else is derived so that
// share1 XOR share2 reproduces image 1 everywhere, and share1 XOR
// flip_vertical(share2) reproduces image 2 on the lower half.
namespace irisvc::vc {

enum class Scheme { kNaorShamir, kFang };

struct NsSharePair {
  BitMatrix share_a;  // rows x 2*cols
  BitMatrix share_b;
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
};

NsSharePair ns_encrypt(const BitMatrix& secret, Rng& rng);
BitMatrix ns_stack(const NsSharePair& pair);
// Pixel is black iff its subpixel pair is fully black. A fully white pair
// cannot come from valid shares and raises kCorruptShare.
BitMatrix ns_decode(const BitMatrix& stacked, std::size_t rows, std::size_t cols);

struct FangSharePair {
  BitMatrix share1;
  BitMatrix share2;
};

// image1 and image2 must share dimensions with an even row count.
FangSharePair fang_encrypt(const BitMatrix& image1, const BitMatrix& image2, Rng& rng);
// share1 XOR share2: image 1, bit-exact.
BitMatrix fang_decode_primary(const FangSharePair& pair);
// share1 OR share2, the physical superimposition.
BitMatrix fang_stack_visual(const FangSharePair& pair);
// Lower half of image 2, (rows/2) x cols.
BitMatrix fang_decode_secondary(const FangSharePair& pair);
// share1 XOR flip_vertical(share2) over all rows. The lower half is
// fang_decode_secondary; the upper half mixes both secrets and is exposed
// only for inspection.
BitMatrix fang_reverse_stack(const FangSharePair& pair);

// Per-pixel frequency of black over repeated encryptions of fixed secrets.
struct SecrecyMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t trials = 0;
  std::vector<double> first;   // share A / share 1
  std::vector<double> second;  // share B / share 2

  double first_at(std::size_t r, std::size_t c) const { return first[r * cols + c]; }
  double second_at(std::size_t r, std::size_t c) const { return second[r * cols + c]; }
};

// Naor-Shamir ignores image2. trials must be >= 1000.
SecrecyMap measure_secrecy(Scheme scheme, const BitMatrix& image1, const BitMatrix& image2,
                           std::size_t trials, Rng& rng);

struct ContrastExpansion {
  double expansion = 0;  // subpixels per secret pixel
  double contrast = 0;   // (mean black-pixel weight - mean white-pixel weight) / expansion
};

// Evaluated by enumerating each scheme's encoding rule over every secret
// colour and every random choice.
ContrastExpansion contrast_and_expansion(Scheme scheme);

}  // namespace irisvc::vc
