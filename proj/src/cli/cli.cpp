#include "irisvc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "irisvc/enroll/enroll.hpp"
#include "irisvc/enroll/store.hpp"
#include "irisvc/error.hpp"
#include "irisvc/iris/pipeline.hpp"
#include "irisvc/kernels.hpp"
#include "irisvc/netpbm.hpp"
#include "irisvc/rng.hpp"
#include "irisvc/vc.hpp"

namespace irisvc::cli {
namespace {

namespace fs = std::filesystem;

struct Config {
  std::string store = "irisvc-store";
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  double threshold = iris::kDefaultThreshold;
  int max_shift = iris::kDefaultMaxShift;
  iris::PipelineParams pipeline;
  bool verbose = false;
};

const char* bool_str(bool b) { return b ? "true" : "false"; }

void print_config(const Config& c, std::ostream& err) {
  const auto& s = c.pipeline.segmentation;
  err << "config: store=" << c.store << "\n"
      << "config: output-dir=" << (c.output_dir.empty() ? "." : c.output_dir) << "\n"
      << "config: seed=" << (c.seed ? std::to_string(*c.seed) : std::string("entropy")) << "\n"
      << "config: threshold=" << c.threshold << "\n"
      << "config: max-shift=" << c.max_shift << "\n"
      << "config: pupil-radius=" << s.pupil_min_radius << ".." << s.pupil_max_radius << "\n"
      << "config: iris-radius=" << s.iris_min_radius << ".." << s.iris_max_radius << "\n"
      << "config: eyelash-threshold=" << s.eyelash_threshold << "\n"
      << "config: eyelids=" << bool_str(s.detect_eyelids) << "\n"
      << "config: wavelength=" << c.pipeline.log_gabor.wavelength << "\n"
      << "config: sigma-on-f=" << c.pipeline.log_gabor.sigma_on_f << "\n"
      << "config: isa=" << kernels::isa_name(kernels::active().isa) << "\n";
}

// Resolves against --output-dir and creates missing parent directories.
fs::path output_path(const Config& c, const std::string& p) {
  fs::path path(p);
  if (!c.output_dir.empty() && path.is_relative()) path = fs::path(c.output_dir) / path;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  return path;
}

Rng make_rng(const Config& c) { return c.seed ? Rng(*c.seed) : Rng::from_entropy(); }

std::optional<std::int64_t> created_at_from_env() {
  const char* v = std::getenv("SOURCE_DATE_EPOCH");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const long long t = std::stoll(v, &used);
    if (used != std::char_traits<char>::length(v)) throw std::invalid_argument(v);
    return t;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "SOURCE_DATE_EPOCH is not an integer");
  }
}

vc::Scheme parse_scheme(const std::string& s) {
  return s == "ns" ? vc::Scheme::kNaorShamir : vc::Scheme::kFang;
}

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

BitMatrix load_mask_or_clear(const std::string& path) {
  if (path.empty()) return BitMatrix(iris::kTemplateRows, iris::kTemplateCols);
  return netpbm::load_pbm(path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Iris template protection with visual secret sharing", "irisvc"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file (flags still win)");

  auto& seg = cfg.pipeline.segmentation;
  app.add_option("--store", cfg.store, "Enrollment store directory")
      ->envname("IRISVC_STORE")
      ->capture_default_str();
  app.add_option("--output-dir", cfg.output_dir, "Directory for relative output paths");
  app.add_option("--seed", cfg.seed, "RNG seed; shares are byte-reproducible under a fixed seed");
  app.add_option("--threshold", cfg.threshold, "Match decision threshold on the masked Hamming distance")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--max-shift", cfg.max_shift, "Max cyclic shift in angular samples")
      ->check(CLI::Range(0, static_cast<int>(iris::kAngularSamples / 2)))
      ->capture_default_str();
  app.add_option("--pupil-min", seg.pupil_min_radius, "Smallest pupil radius searched (px)")
      ->capture_default_str();
  app.add_option("--pupil-max", seg.pupil_max_radius, "Largest pupil radius searched (px)")
      ->capture_default_str();
  app.add_option("--iris-min", seg.iris_min_radius, "Smallest iris radius searched (px)")
      ->capture_default_str();
  app.add_option("--iris-max", seg.iris_max_radius, "Largest iris radius searched (px)")
      ->capture_default_str();
  app.add_option("--eyelash-threshold", seg.eyelash_threshold,
                 "Pixels darker than this outside the pupil are noise")
      ->check(CLI::Range(0, 256))
      ->capture_default_str();
  bool no_eyelids = false;
  app.add_flag("--no-eyelids", no_eyelids, "Skip eyelid line detection");
  app.add_option("--wavelength", cfg.pipeline.log_gabor.wavelength,
                 "Log-Gabor centre wavelength (samples)")
      ->capture_default_str();
  app.add_option("--sigma-on-f", cfg.pipeline.log_gabor.sigma_on_f, "Log-Gabor bandwidth ratio")
      ->capture_default_str();
  app.add_flag("-v,--verbose", cfg.verbose, "Print the effective configuration to stderr");

  // enroll
  std::string login, eye_path, secret_path, card_path, probe_path;
  std::optional<std::int64_t> created_at;
  auto* enroll_cmd = app.add_subcommand("enroll", "Enroll a user and write their card share");
  enroll_cmd->add_option("login", login, "User login")->required();
  enroll_cmd->add_option("eye", eye_path, "Eye image (PGM)")->required();
  enroll_cmd->add_option("secret", secret_path, "Admin secret (10x480 PBM)")->required();
  enroll_cmd->add_option("card", card_path, "Card share output (PBM)")->required();
  enroll_cmd->add_option("--created-at", created_at,
                         "Record timestamp, seconds since epoch (default $SOURCE_DATE_EPOCH, else now)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Authenticate a user from card share and probe eye");
  verify_cmd->add_option("login", login, "User login")->required();
  verify_cmd->add_option("card", card_path, "Card share (PBM)")->required();
  verify_cmd->add_option("probe", probe_path, "Probe eye image (PGM)")->required();
  verify_cmd->add_option("--secret", secret_path, "Admin secret (10x480 PBM)")->required();

  auto* list_cmd = app.add_subcommand("list", "List enrolled logins");
  auto* remove_cmd = app.add_subcommand("remove", "Delete an enrollment");
  remove_cmd->add_option("login", login, "User login")->required();
  std::string share_out, export_mask_out;
  auto* export_cmd = app.add_subcommand("export", "Write a stored share and mask as PBM");
  export_cmd->add_option("login", login, "User login")->required();
  export_cmd->add_option("share", share_out, "Stored share output (PBM)")->required();
  export_cmd->add_option("--mask", export_mask_out, "Template mask output (PBM)");

  // vc
  std::string scheme = "fang", in1, in2, out1, out2;
  bool full = false;
  auto* vc_cmd = app.add_subcommand("vc", "Visual secret sharing on PBM files");
  vc_cmd->require_subcommand(1);
  vc_cmd->add_option("--scheme", scheme, "ns (2,2 with pixel expansion 2) or fang (two secrets)")
      ->check(CLI::IsMember({"ns", "fang"}))
      ->capture_default_str();
  auto* vc_encrypt = vc_cmd->add_subcommand("encrypt", "Split secrets into two shares");
  vc_encrypt->add_option("image1", in1, "Secret image (PBM)")->required();
  vc_encrypt->add_option("image2", in2, "Second secret, fang only (PBM)");
  vc_encrypt->add_option("--share1", out1, "Share 1 output (PBM)")->required();
  vc_encrypt->add_option("--share2", out2, "Share 2 output (PBM)")->required();
  auto* vc_decode = vc_cmd->add_subcommand("decode", "Recover image 1 exactly");
  auto* vc_stack = vc_cmd->add_subcommand("stack", "OR-superimpose the shares");
  auto* vc_decode2 = vc_cmd->add_subcommand("decode2", "Recover the lower half of image 2 (fang)");
  for (auto* sub : {vc_decode, vc_stack, vc_decode2}) {
    sub->add_option("share1", in1, "Share 1 (PBM)")->required();
    sub->add_option("share2", in2, "Share 2 (PBM)")->required();
    sub->add_option("output", out1, "Output (PBM)")->required();
  }
  vc_decode2->add_flag("--full", full, "Write the full-height reverse stack instead");

  // iris
  std::string overlay_out, strip_out, mask_out, noise_out, mask1, mask2;
  auto* iris_cmd = app.add_subcommand("iris", "Run individual iris pipeline stages");
  iris_cmd->require_subcommand(1);
  auto* iris_segment = iris_cmd->add_subcommand("segment", "Locate iris, pupil, eyelids, noise");
  iris_segment->add_option("eye", eye_path, "Eye image (PGM)")->required();
  iris_segment->add_option("overlay", overlay_out, "Overlay output (PGM)")->required();
  iris_segment->add_option("--noise", noise_out, "Noise map output (PBM)");
  auto* iris_normalize = iris_cmd->add_subcommand("normalize", "Unwrap the iris to a 20x240 strip");
  iris_normalize->add_option("eye", eye_path, "Eye image (PGM)")->required();
  iris_normalize->add_option("strip", strip_out, "Strip output (PGM)")->required();
  iris_normalize->add_option("--mask", mask_out, "Strip mask output (PBM)");
  auto* iris_encode = iris_cmd->add_subcommand("encode", "Extract the 20x480 template");
  iris_encode->add_option("eye", eye_path, "Eye image (PGM)")->required();
  iris_encode->add_option("template", out1, "Template output (PBM)")->required();
  iris_encode->add_option("--mask", mask_out, "Template mask output (PBM)");
  iris_encode->add_option("--overlay", overlay_out, "Also write the segmentation overlay (PGM)");
  iris_encode->add_option("--strip", strip_out, "Also write the normalized strip (PGM)");
  auto* iris_match = iris_cmd->add_subcommand("match", "Masked, shifted Hamming distance");
  iris_match->add_option("template1", in1, "Template (PBM)")->required();
  iris_match->add_option("template2", in2, "Template (PBM)")->required();
  iris_match->add_option("--mask1", mask1, "Mask of template 1 (PBM, default all valid)");
  iris_match->add_option("--mask2", mask2, "Mask of template 2 (PBM, default all valid)");

  app.footer(
      "Exit status: 0 success or match, 1 non-match, 2 error.\n"
      "Defaults: threshold 0.4, max shift 8, pupil radius 25-75, iris radius 80-150,\n"
      "eyelash threshold 80, Log-Gabor wavelength 18 and sigma/f 0.5.\n"
      "Config file lines are key=value using the long option names, e.g. threshold=0.35.\n"
      "Precedence: command line > config file > IRISVC_STORE (store only) > defaults.");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitError;
  }

  seg.detect_eyelids = !no_eyelids;
  if (cfg.verbose) print_config(cfg, err);

  try {
    if (*enroll_cmd) {
      const enroll::AdminSecret secret(netpbm::load_pbm(secret_path));
      const GrayImage eye = netpbm::load_pgm(eye_path);
      auto store = enroll::RecordStore::open(cfg.store);
      Rng rng = make_rng(cfg);
      enroll::EnrollOptions opts;
      opts.pipeline = cfg.pipeline;
      opts.created_at = created_at ? created_at : created_at_from_env();
      const fs::path card = output_path(cfg, card_path);
      const auto record = enroll::enroll(login, eye, secret, store, rng, card, opts);
      out << "enrolled: " << record.login << "\n"
          << "card: " << card.string() << "\n"
          << "created_at: " << record.created_at << "\n";
      return kExitOk;
    }
    if (*verify_cmd) {
      const enroll::AdminSecret secret(netpbm::load_pbm(secret_path));
      const BitMatrix card = netpbm::load_pbm(card_path);
      const GrayImage probe = netpbm::load_pgm(probe_path);
      const auto store = enroll::RecordStore::open(cfg.store);
      enroll::AuthOptions opts;
      opts.pipeline = cfg.pipeline;
      opts.threshold = cfg.threshold;
      opts.max_shift = cfg.max_shift;
      const auto d = enroll::authenticate(login, card, probe, store, secret, opts);
      out << "distance: " << fixed4(d.distance) << "\n"
          << "best_shift: " << d.best_shift << "\n"
          << "card_authentic: " << bool_str(d.card_authentic) << "\n"
          << "matched: " << bool_str(d.matched) << "\n";
      return d.matched && d.card_authentic ? kExitOk : kExitNoMatch;
    }
    if (*list_cmd) {
      const auto store = enroll::RecordStore::open(cfg.store);
      for (const auto& l : store.list()) out << l << "\n";
      return kExitOk;
    }
    if (*remove_cmd) {
      auto store = enroll::RecordStore::open(cfg.store);
      store.remove(login);
      out << "removed: " << login << "\n";
      return kExitOk;
    }
    if (*export_cmd) {
      const auto store = enroll::RecordStore::open(cfg.store);
      const auto& record = store.get(login);
      netpbm::save_pbm(record.db_share, output_path(cfg, share_out));
      if (!export_mask_out.empty()) netpbm::save_pbm(record.mask, output_path(cfg, export_mask_out));
      out << "login: " << record.login << "\n"
          << "created_at: " << record.created_at << "\n"
          << "scheme_version: " << record.scheme_version << "\n";
      return kExitOk;
    }
    if (*vc_cmd) {
      const vc::Scheme s = parse_scheme(scheme);
      if (*vc_encrypt) {
        const BitMatrix image1 = netpbm::load_pbm(in1);
        Rng rng = make_rng(cfg);
        BitMatrix a, b;
        if (s == vc::Scheme::kNaorShamir) {
          if (!in2.empty()) {
            throw Error(ErrorCode::kInvalidArgument, "the ns scheme takes a single secret image");
          }
          auto pair = vc::ns_encrypt(image1, rng);
          a = std::move(pair.share_a);
          b = std::move(pair.share_b);
        } else {
          if (in2.empty()) {
            throw Error(ErrorCode::kInvalidArgument, "the fang scheme needs image1 and image2");
          }
          auto pair = vc::fang_encrypt(image1, netpbm::load_pbm(in2), rng);
          a = std::move(pair.share1);
          b = std::move(pair.share2);
        }
        netpbm::save_pbm(a, output_path(cfg, out1));
        netpbm::save_pbm(b, output_path(cfg, out2));
        return kExitOk;
      }
      const BitMatrix a = netpbm::load_pbm(in1);
      const BitMatrix b = netpbm::load_pbm(in2);
      require_same_shape(a, b, "shares");
      BitMatrix result;
      if (s == vc::Scheme::kNaorShamir) {
        if (*vc_decode2) {
          throw Error(ErrorCode::kUnsupported, "decode2 applies to the fang scheme only");
        }
        if (a.cols() % 2 != 0) {
          throw Error(ErrorCode::kDimensionMismatch, "ns shares need an even column count");
        }
        const vc::NsSharePair pair{a, b, a.rows(), a.cols() / 2};
        result = vc::ns_stack(pair);
        if (*vc_decode) result = vc::ns_decode(result, pair.source_rows, pair.source_cols);
      } else {
        const vc::FangSharePair pair{a, b};
        if (*vc_decode) {
          result = vc::fang_decode_primary(pair);
        } else if (*vc_stack) {
          result = vc::fang_stack_visual(pair);
        } else {
          result = full ? vc::fang_reverse_stack(pair) : vc::fang_decode_secondary(pair);
        }
      }
      netpbm::save_pbm(result, output_path(cfg, out1));
      return kExitOk;
    }
    if (*iris_cmd) {
      if (*iris_match) {
        const auto a = iris::image_to_template(netpbm::load_pbm(in1), load_mask_or_clear(mask1));
        const auto b = iris::image_to_template(netpbm::load_pbm(in2), load_mask_or_clear(mask2));
        const auto m = iris::hamming_distance(a, b, cfg.max_shift);
        const bool matched = m.distance <= cfg.threshold;
        out << "distance: " << fixed4(m.distance) << "\n"
            << "best_shift: " << m.best_shift << "\n"
            << "compared_bits: " << m.compared_bits << "\n"
            << "matched: " << bool_str(matched) << "\n";
        return matched ? kExitOk : kExitNoMatch;
      }
      const GrayImage eye = netpbm::load_pgm(eye_path);
      if (*iris_segment) {
        const auto r = iris::segment(eye, seg);
        netpbm::save_pgm(iris::render_segmentation(eye, r), output_path(cfg, overlay_out));
        if (!noise_out.empty()) netpbm::save_pbm(r.noise, output_path(cfg, noise_out));
        out << "pupil: " << r.pupil.cx << " " << r.pupil.cy << " " << r.pupil.r << "\n"
            << "iris: " << r.iris.cx << " " << r.iris.cy << " " << r.iris.r << "\n"
            << "upper_eyelid: " << bool_str(r.upper_eyelid.has_value()) << "\n"
            << "lower_eyelid: " << bool_str(r.lower_eyelid.has_value()) << "\n"
            << "noise_pixels: " << r.noise.count_black() << "\n";
        return kExitOk;
      }
      const auto trace = iris::run_pipeline(eye, cfg.pipeline);
      if (*iris_normalize) {
        netpbm::save_pgm(iris::to_gray(trace.normalized), output_path(cfg, strip_out));
        if (!mask_out.empty()) netpbm::save_pbm(trace.normalized.mask, output_path(cfg, mask_out));
        out << "masked_samples: " << trace.normalized.mask.count_black() << "\n";
        return kExitOk;
      }
      netpbm::save_pbm(trace.iris_template.bits, output_path(cfg, out1));
      if (!mask_out.empty()) netpbm::save_pbm(trace.iris_template.mask, output_path(cfg, mask_out));
      if (!overlay_out.empty()) {
        netpbm::save_pgm(iris::render_segmentation(eye, trace.segmentation),
                         output_path(cfg, overlay_out));
      }
      if (!strip_out.empty()) {
        netpbm::save_pgm(iris::to_gray(trace.normalized), output_path(cfg, strip_out));
      }
      out << "template: " << trace.iris_template.bits.rows() << "x"
          << trace.iris_template.bits.cols() << "\n"
          << "masked_bits: " << trace.iris_template.mask.count_black() << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "irisvc: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace irisvc::cli
