// Acceptance gate. Each criterion prints one PASS/FAIL line; the exit status
// is non-zero when any criterion fails.

#include <boost/math/distributions/chi_squared.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "irisvc/bit_matrix.hpp"
#include "irisvc/cli.hpp"
#include "irisvc/enroll/enroll.hpp"
#include "irisvc/enroll/store.hpp"
#include "irisvc/error.hpp"
#include "irisvc/iris/pipeline.hpp"
#include "irisvc/netpbm.hpp"
#include "irisvc/rng.hpp"
#include "irisvc/vc.hpp"
#include "synthetic_eye.hpp"
#include "temp_dir.hpp"

namespace {

using namespace irisvc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (auto& b : m.bits()) b = rng.next_bit();
  return m;
}

iris::IrisTemplate random_template(Rng& rng) {
  iris::IrisTemplate t{random_matrix(20, 480, rng), BitMatrix(20, 480)};
  for (std::size_t r = 0; r < 20; ++r) {
    for (std::size_t j = 0; j < 240; ++j) {
      const bool m = rng.uniform(6) == 0;
      t.mask.set(r, 2 * j, m);
      t.mask.set(r, 2 * j + 1, m);
    }
  }
  return t;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Exact template recovery.
Outcome exact_recovery() {
  const auto start = Clock::now();
  Rng rng(1001);
  int primary_ok = 0, secondary_ok = 0, hd_zero = 0;
  for (int k = 0; k < 1000; ++k) {
    const BitMatrix i1 = random_matrix(20, 480, rng);
    const BitMatrix i2 = random_matrix(20, 480, rng);
    const auto pair = vc::fang_encrypt(i1, i2, rng);
    const BitMatrix rec = vc::fang_decode_primary(pair);
    primary_ok += rec == i1;
    secondary_ok += vc::fang_decode_secondary(pair) == row_slice(i2, 10, 10);
    const iris::IrisTemplate enrolled{i1, BitMatrix(20, 480)};
    hd_zero += iris::hamming_distance(enrolled, iris::image_to_template(rec, enrolled.mask), 0)
                   .distance == 0.0;
  }
  const double t = seconds_since(start);
  std::ostringstream d;
  d << "primary " << primary_ok << "/1000, secondary " << secondary_ok << "/1000, HD=0 "
    << hd_zero << "/1000, " << fmt("%.2f s", t);
  return {primary_ok == 1000 && secondary_ok == 1000 && hd_zero == 1000 && t < 10.0, d.str()};
}

// 2. Codebook fidelity of the (2,2) scheme.
Outcome codebook_fidelity() {
  bool weights_ok = true;
  int patterns_seen = 0;
  for (const std::uint8_t colour : {0, 1}) {
    std::array<bool, 2> seen{false, false};
    for (std::uint64_t seed = 0; seed < 256; ++seed) {
      Rng rng(seed);
      const auto pair = vc::ns_encrypt(BitMatrix(1, 1, colour), rng);
      const BitMatrix s = vc::ns_stack(pair);
      seen[pair.share_a.at(0, 0)] = true;
      weights_ok &= pair.share_a.at(0, 0) + pair.share_a.at(0, 1) == 1;
      weights_ok &= pair.share_b.at(0, 0) + pair.share_b.at(0, 1) == 1;
      weights_ok &= static_cast<unsigned>(s.at(0, 0) + s.at(0, 1)) == (colour ? 2u : 1u);
    }
    patterns_seen += seen[0] + seen[1];
  }
  Rng rng(2002);
  int round_trips = 0;
  for (int k = 0; k < 100; ++k) {
    const BitMatrix secret = random_matrix(20, 480, rng);
    round_trips += vc::ns_decode(vc::ns_stack(vc::ns_encrypt(secret, rng)), 20, 480) == secret;
  }
  const auto ce = vc::contrast_and_expansion(vc::Scheme::kNaorShamir);
  std::ostringstream d;
  d << "stack weights " << (weights_ok ? "1/2" : "WRONG") << ", random rows seen "
    << patterns_seen << "/4, round trips " << round_trips << "/100, expansion " << ce.expansion
    << ", contrast " << ce.contrast;
  return {weights_ok && patterns_seen == 4 && round_trips == 100 && ce.expansion == 2.0 &&
              ce.contrast == 0.5,
          d.str()};
}

// 3. Marginal secrecy plus a chi-square test on single Naor-Shamir shares.
Outcome marginal_secrecy() {
  constexpr std::size_t kTrials = 10000;
  Rng gen(3003);
  const BitMatrix i1 = random_matrix(20, 480, gen);
  const BitMatrix i2 = random_matrix(20, 480, gen);
  double lo = 1.0, hi = 0.0;
  auto scan = [&](const std::vector<double>& f) {
    for (const double v : f) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  Rng rng_ns(3004), rng_fang(3005);
  const auto ns = vc::measure_secrecy(vc::Scheme::kNaorShamir, i1, i1, kTrials, rng_ns);
  scan(ns.first);
  scan(ns.second);
  const auto fang = vc::measure_secrecy(vc::Scheme::kFang, i1, i2, kTrials, rng_fang);
  scan(fang.first);
  scan(fang.second);

  // Per pixel, a 2x2 table of (secret, share-A pattern) counts; the pixel
  // statistics are independent under the null, so they sum to a chi-square
  // with one degree of freedom per pixel.
  const BitMatrix other = complement(i1);
  Rng rng_a(3006), rng_b(3007);
  const auto fa = vc::measure_secrecy(vc::Scheme::kNaorShamir, i1, i1, kTrials, rng_a);
  const auto fb = vc::measure_secrecy(vc::Scheme::kNaorShamir, other, other, kTrials, rng_b);
  double stat = 0;
  const std::size_t pixels = i1.size();
  const double n = static_cast<double>(kTrials);
  for (std::size_t p = 0; p < pixels; ++p) {
    const std::size_t left = (p / 480) * 960 + 2 * (p % 480);
    const double a1 = fa.first[left] * n, b1 = fb.first[left] * n;
    const double a0 = n - a1, b0 = n - b1;
    const double col1 = a1 + b1, col0 = a0 + b0;
    if (col1 == 0 || col0 == 0) continue;
    const double e1 = col1 / 2, e0 = col0 / 2;
    stat += (a1 - e1) * (a1 - e1) / e1 + (b1 - e1) * (b1 - e1) / e1 + (a0 - e0) * (a0 - e0) / e0 +
            (b0 - e0) * (b0 - e0) / e0;
  }
  const boost::math::chi_squared dist(static_cast<double>(pixels));
  const double p_value = boost::math::cdf(boost::math::complement(dist, stat));

  std::ostringstream d;
  d << "black frequency range [" << fmt("%.4f", lo) << ", " << fmt("%.4f", hi)
    << "], chi-square " << fmt("%.1f", stat) << " on " << pixels << " df, p = "
    << fmt("%.3f", p_value);
  return {lo >= 0.47 && hi <= 0.53 && p_value > 0.01, d.str()};
}

// 4. Tamper evidence of the card check.
Outcome tamper_evidence() {
  Rng rng(4004);
  BitMatrix secret_img = random_matrix(10, 480, rng);
  const enroll::AdminSecret secret(secret_img);
  const auto tmpl = random_template(rng);
  const auto pair = vc::fang_encrypt(iris::template_to_image(tmpl), secret.as_secondary_image(), rng);
  if (!enroll::verify_card(pair.share1, pair.share2, secret)) return {false, "genuine pair rejected"};
  int caught1 = 0, caught2 = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t r = 10 + rng.uniform(10);
    const std::size_t c = rng.uniform(480);
    BitMatrix s1 = pair.share1;
    s1.flip(r, c);
    caught1 += !enroll::verify_card(s1, pair.share2, secret);
    BitMatrix s2 = pair.share2;
    s2.flip(r, c);
    caught2 += !enroll::verify_card(pair.share1, s2, secret);
  }
  std::ostringstream d;
  d << "share 1 lower-half flips caught " << caught1 << "/200, share 2 lower-half flips caught "
    << caught2 << "/200";
  if (caught2 == 0) d << " (share 2 lower rows do not enter the secret reconstruction)";
  return {caught1 == 200 && caught2 == 200, d.str()};
}

// 5. Segmentation against rendered eyes with known geometry.
Outcome segmentation_oracle() {
  Rng rng(5005);
  int hits = 0;
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const auto spec = testing::random_eye(rng);
    try {
      const auto seg = iris::segment(testing::render_eye(spec));
      const double err = std::max({std::abs(seg.pupil.cx - spec.pupil.cx),
                                   std::abs(seg.pupil.cy - spec.pupil.cy),
                                   std::abs(seg.pupil.r - spec.pupil.r),
                                   std::abs(seg.iris.cx - spec.iris.cx),
                                   std::abs(seg.iris.cy - spec.iris.cy),
                                   std::abs(seg.iris.r - spec.iris.r)});
      worst = std::max(worst, err);
      hits += err <= 2.0;
    } catch (const Error&) {
      worst = 1e9;
    }
  }
  std::ostringstream d;
  d << hits << "/20 within 2 px, worst error " << fmt("%.2f px", worst);
  return {hits >= 19, d.str()};
}

// 6. Normalization contract.
Outcome normalization_contract() {
  testing::EyeSpec spec;
  spec.pupil = {158.3, 141.7, 36};
  spec.iris = {158.3, 141.7, 104};
  spec.radial_profile = [](double d) { return 30.0 + 1.6 * d + 12.0 * std::cos(d / 5.0); };
  const auto n = iris::normalize(testing::render_eye(spec), testing::oracle_segmentation(spec));
  double worst = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    double lo = 1e9, hi = -1e9;
    for (std::size_t j = 0; j < 240; ++j) {
      lo = std::min(lo, n.at(i, j));
      hi = std::max(hi, n.at(i, j));
    }
    worst = std::max(worst, hi - lo);
  }
  Rng rng(6006);
  bool shapes = n.samples.size() == 20 * 240 && n.mask.rows() == 20 && n.mask.cols() == 240;
  for (int k = 0; k < 10; ++k) {
    const auto s = testing::random_eye(rng);
    const auto m = iris::normalize(testing::render_eye(s), testing::oracle_segmentation(s));
    shapes &= m.samples.size() == 20 * 240 && m.mask.rows() == 20 && m.mask.cols() == 240;
  }
  std::ostringstream d;
  d << "max row spread " << fmt("%.3f", worst) << " levels, shapes " << (shapes ? "20x240" : "WRONG");
  return {worst <= 1.0 && shapes, d.str()};
}

// 7. Encoder contracts.
Outcome encoder_contracts() {
  const auto h = iris::log_gabor_filter(240, {});
  const double peak = *std::max_element(h.begin(), h.end());
  const double dc_ratio = std::abs(h[0]) / peak;

  iris::NormalizedIris flat;
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 240; ++j) flat.at(i, j) = 60.0 + 7.0 * static_cast<double>(i);
  }
  const bool constant_masked = iris::encode_features(flat).mask.count_black() == 20 * 480;

  Rng rng(7007);
  bool shapes = true, deterministic = true;
  for (int k = 0; k < 5; ++k) {
    const GrayImage eye = testing::render_eye(testing::random_eye(rng));
    const auto a = iris::extract_template(eye);
    const auto b = iris::extract_template(eye);
    shapes &= a.bits.rows() == 20 && a.bits.cols() == 480 && a.mask.rows() == 20 &&
              a.mask.cols() == 480;
    deterministic &= a == b;
  }
  std::ostringstream d;
  d << "DC/peak " << fmt("%.1e", dc_ratio) << ", constant rows "
    << (constant_masked ? "fully masked" : "NOT masked") << ", shapes "
    << (shapes ? "20x480" : "WRONG") << ", deterministic " << (deterministic ? "yes" : "no");
  return {dc_ratio < 1e-12 && constant_masked && shapes && deterministic, d.str()};
}

// 8. Matching properties.
Outcome matching_properties() {
  Rng rng(8008);
  int identity = 0, shifts = 0, masked = 0;
  for (int k = 0; k < 100; ++k) {
    const auto t = random_template(rng);
    const auto self = iris::hamming_distance(t, t);
    identity += self.distance == 0.0 && self.best_shift == 0;

    bool all_shifts = true;
    for (int s = -8; s <= 8; ++s) {
      const auto m = iris::hamming_distance(t, iris::rotate(t, s));
      all_shifts &= m.distance == 0.0 && m.best_shift == -s;
    }
    shifts += all_shifts;

    const auto u = random_template(rng);
    const auto before = iris::hamming_distance(t, u);
    auto t2 = t;
    auto u2 = u;
    for (std::size_t i = 0; i < t.bits.size(); ++i) {
      if (t.mask.bits()[i]) t2.bits.bits()[i] ^= rng.next_bit();
      if (u.mask.bits()[i]) u2.bits.bits()[i] ^= rng.next_bit();
    }
    masked += iris::hamming_distance(t2, u2) == before;
  }
  std::ostringstream d;
  d << "HD(t,t)=0 " << identity << "/100, shift compensation " << shifts
    << "/100, masked flips inert " << masked << "/100";
  return {identity == 100 && shifts == 100 && masked == 100, d.str()};
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

// 9. End-to-end through the command-line surface.
Outcome end_to_end() {
  testing::TempDir dir;
  auto p = [&](const std::string& n) { return (dir / n).string(); };
  netpbm::save_pgm(testing::render_eye(testing::EyeSpec{}), p("eye.pgm"));
  Rng rng(9009);
  netpbm::save_pbm(random_matrix(10, 480, rng), p("secret.pbm"));
  netpbm::save_pbm(random_matrix(20, 480, rng), p("forged.pbm"));

  auto enroll_into = [&](const std::string& store, const std::string& card) {
    return cli({"--store", p(store), "--seed", "31337", "enroll", "alice", p("eye.pgm"),
                p("secret.pbm"), p(card), "--created-at", "1700000000"});
  };
  const int e1 = enroll_into("s1", "card1.pbm");
  const int e2 = enroll_into("s2", "card2.pbm");

  std::string genuine_out, forged_out;
  const int genuine = cli({"--store", p("s1"), "verify", "alice", p("card1.pbm"), p("eye.pgm"),
                           "--secret", p("secret.pbm")},
                          &genuine_out);
  const int forged = cli({"--store", p("s1"), "verify", "alice", p("forged.pbm"), p("eye.pgm"),
                          "--secret", p("secret.pbm")},
                         &forged_out);

  const int v1 = cli({"--seed", "7", "vc", "encrypt", p("card1.pbm"), p("card2.pbm"), "--share1",
                      p("a1.pbm"), "--share2", p("b1.pbm")});
  const int v2 = cli({"--seed", "7", "vc", "encrypt", p("card1.pbm"), p("card2.pbm"), "--share1",
                      p("a2.pbm"), "--share2", p("b2.pbm")});

  const bool reproducible =
      e1 == 0 && e2 == 0 && v1 == 0 && v2 == 0 &&
      netpbm::read_file(p("card1.pbm")) == netpbm::read_file(p("card2.pbm")) &&
      netpbm::read_file(dir / "s1" / "alice.rec") == netpbm::read_file(dir / "s2" / "alice.rec") &&
      netpbm::read_file(p("a1.pbm")) == netpbm::read_file(p("a2.pbm")) &&
      netpbm::read_file(p("b1.pbm")) == netpbm::read_file(p("b2.pbm"));

  const bool genuine_ok = genuine == 0 &&
                          genuine_out.find("distance: 0.0000\n") != std::string::npos &&
                          genuine_out.find("card_authentic: true\n") != std::string::npos &&
                          genuine_out.find("matched: true\n") != std::string::npos;
  const bool forged_ok = forged == 1 && forged_out.find("card_authentic: false") != std::string::npos;
  std::ostringstream d;
  d << "genuine exit " << genuine << (genuine_ok ? " (distance 0, authentic)" : " (UNEXPECTED)")
    << ", forged exit " << forged << ", byte-reproducible " << (reproducible ? "yes" : "no");
  return {genuine_ok && forged_ok && reproducible, d.str()};
}

// 10. Store durability.
Outcome store_durability() {
  testing::TempDir dir;
  Rng rng(10010);
  int lossless = 0;
  for (int k = 0; k < 100; ++k) {
    enroll::EnrollmentRecord r;
    r.login = "user-" + std::to_string(k % 13);
    r.db_share = random_matrix(20, 480, rng);
    r.mask = random_matrix(20, 480, rng);
    r.created_at = static_cast<std::int64_t>(rng.next_u64() >> 2);
    {
      auto store = enroll::RecordStore::open(dir.path());
      store.put(r);
    }
    lossless += enroll::RecordStore::open(dir.path()).get(r.login) == r;
  }
  const auto victim = dir / enroll::record_file_name("user-3");
  std::filesystem::resize_file(victim, std::filesystem::file_size(victim) / 2);
  std::string message;
  bool unrecoverable = false;
  try {
    enroll::RecordStore::open(dir.path());
  } catch (const Error& e) {
    message = e.what();
    unrecoverable = e.code() == ErrorCode::kUnrecoverableStore &&
                    message.find("checksum") != std::string::npos;
  }
  std::ostringstream d;
  d << "lossless cycles " << lossless << "/100, truncated file: "
    << (message.empty() ? "not reported" : message);
  return {lossless == 100 && unrecoverable, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact template recovery", exact_recovery},
      {"codebook fidelity", codebook_fidelity},
      {"marginal secrecy", marginal_secrecy},
      {"tamper evidence", tamper_evidence},
      {"segmentation oracle", segmentation_oracle},
      {"normalization contract", normalization_contract},
      {"encoder contracts", encoder_contracts},
      {"matching properties", matching_properties},
      {"end-to-end", end_to_end},
      {"store durability", store_durability},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
