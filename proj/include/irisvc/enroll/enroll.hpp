#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "irisvc/bit_matrix.hpp"
#include "irisvc/enroll/store.hpp"
#include "irisvc/gray_image.hpp"
#include "irisvc/iris/pipeline.hpp"
#include "irisvc/rng.hpp"

namespace irisvc::enroll {

inline constexpr std::size_t kSecretRows = iris::kTemplateRows / 2;
inline constexpr std::size_t kSecretCols = iris::kTemplateCols;

// Administrator-chosen binary image. It fills the lower half of the second
// secret, the half the share pair can reproduce exactly.
class AdminSecret {
 public:
  // Throws kDimensionMismatch unless the image is 10x480.
  explicit AdminSecret(BitMatrix image);
  const BitMatrix& image() const noexcept { return image_; }

  // 20x480 second secret: white upper half, this image below.
  BitMatrix as_secondary_image() const;

 private:
  BitMatrix image_;
};

struct EnrollOptions {
  iris::PipelineParams pipeline;
  // Defaults to the current time.
  std::optional<std::int64_t> created_at;
};

struct AuthOptions {
  iris::PipelineParams pipeline;
  double threshold = iris::kDefaultThreshold;
  int max_shift = iris::kDefaultMaxShift;
};

struct AuthDecision {
  bool matched = false;
  double distance = 0;
  int best_shift = 0;
  bool card_authentic = false;
  double threshold_used = 0;
};

// Extracts the template of `eye`, splits it with the admin secret into two
// shares, writes share 1 to `card_path` as PBM and stores share 2 with the
// template mask under `login`.
EnrollmentRecord enroll(const std::string& login, const GrayImage& eye, const AdminSecret& secret,
                        RecordStore& store, Rng& rng, const std::filesystem::path& card_path,
                        const EnrollOptions& options = {});

// Rebuilds the enrolled template from the card and stored shares, matches it
// against the probe, and checks the card against the admin secret.
AuthDecision authenticate(const std::string& login, const BitMatrix& card_share,
                          const GrayImage& probe_eye, const RecordStore& store,
                          const AdminSecret& secret, const AuthOptions& options = {});

// True iff the pair reproduces the admin secret bit-exactly.
bool verify_card(const BitMatrix& card_share, const BitMatrix& db_share, const AdminSecret& secret);

}  // namespace irisvc::enroll
