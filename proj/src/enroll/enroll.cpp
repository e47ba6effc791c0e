#include "irisvc/enroll/enroll.hpp"

#include <chrono>
#include <string>
#include <system_error>

#include "irisvc/error.hpp"
#include "irisvc/netpbm.hpp"
#include "irisvc/vc.hpp"

namespace irisvc::enroll {
namespace {

void require_share_dims(const BitMatrix& m, const char* what) {
  if (m.rows() != iris::kTemplateRows || m.cols() != iris::kTemplateCols) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " +
                    std::to_string(iris::kTemplateRows) + "x" +
                    std::to_string(iris::kTemplateCols));
  }
}

std::int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

AdminSecret::AdminSecret(BitMatrix image) : image_(std::move(image)) {
  if (image_.rows() != kSecretRows || image_.cols() != kSecretCols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "admin secret is " + std::to_string(image_.rows()) + "x" +
                    std::to_string(image_.cols()) + ", expected " + std::to_string(kSecretRows) +
                    "x" + std::to_string(kSecretCols));
  }
}

BitMatrix AdminSecret::as_secondary_image() const {
  return vconcat(BitMatrix::white(iris::kTemplateRows - kSecretRows, kSecretCols), image_);
}

EnrollmentRecord enroll(const std::string& login, const GrayImage& eye, const AdminSecret& secret,
                        RecordStore& store, Rng& rng, const std::filesystem::path& card_path,
                        const EnrollOptions& options) {
  if (login.empty()) throw Error(ErrorCode::kInvalidArgument, "login must not be empty");
  if (store.contains(login)) {
    throw Error(ErrorCode::kDuplicateLogin, "login '" + login + "' is already enrolled");
  }
  const iris::IrisTemplate tmpl = iris::extract_template(eye, options.pipeline);
  const vc::FangSharePair shares =
      vc::fang_encrypt(iris::template_to_image(tmpl), secret.as_secondary_image(), rng);

  EnrollmentRecord record{login, shares.share2, tmpl.mask, options.created_at.value_or(now_seconds()),
                          kSchemeVersion};
  netpbm::save_pbm(shares.share1, card_path);
  try {
    store.insert(record);
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(card_path, ignored);
    throw;
  }
  return record;
}

bool verify_card(const BitMatrix& card_share, const BitMatrix& db_share, const AdminSecret& secret) {
  require_share_dims(card_share, "card share");
  require_share_dims(db_share, "stored share");
  return vc::fang_decode_secondary({card_share, db_share}) == secret.image();
}

AuthDecision authenticate(const std::string& login, const BitMatrix& card_share,
                          const GrayImage& probe_eye, const RecordStore& store,
                          const AdminSecret& secret, const AuthOptions& options) {
  const EnrollmentRecord& record = store.get(login);
  require_share_dims(card_share, "card share");

  const BitMatrix bits = vc::fang_decode_primary({card_share, record.db_share});
  const iris::IrisTemplate enrolled = iris::image_to_template(bits, record.mask);
  const iris::IrisTemplate probe = iris::extract_template(probe_eye, options.pipeline);
  const iris::MatchResult match = iris::hamming_distance(enrolled, probe, options.max_shift);

  AuthDecision decision;
  decision.distance = match.distance;
  decision.best_shift = match.best_shift;
  decision.threshold_used = options.threshold;
  decision.matched = match.distance <= options.threshold;
  decision.card_authentic = verify_card(card_share, record.db_share, secret);
  return decision;
}

}  // namespace irisvc::enroll
