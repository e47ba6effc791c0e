#include "irisvc/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "irisvc/error.hpp"

namespace irisvc::netpbm {
namespace {

constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string magic() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') malformed("missing netpbm magic number");
    pos_ = 2;
    return {static_cast<char>(bytes_[0]), static_cast<char>(bytes_[1])};
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = static_cast<char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      malformed(std::string("header field '") + what + "' missing");
    }
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        malformed(std::string("header field '") + what + "' out of range");
      }
      ++pos_;
    }
    return value;
  }

  // Raw formats separate the header from the payload by exactly one
  // whitespace byte.
  void single_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      malformed("header not terminated by whitespace");
    }
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

  [[noreturn]] static void malformed(const std::string& why) {
    throw Error(ErrorCode::kMalformedFile, "netpbm: " + why);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_dims(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) HeaderReader::malformed("zero image dimension");
  if (width > kMaxPixels / height) HeaderReader::malformed("image dimensions too large");
}

BitMatrix decode_plain_bits(HeaderReader& reader, std::span<const std::uint8_t> bytes,
                            std::size_t width, std::size_t height) {
  std::vector<std::uint8_t> bits;
  bits.reserve(width * height);
  while (bits.size() < width * height) {
    reader.skip_space_and_comments();
    if (reader.pos() >= bytes.size()) {
      HeaderReader::malformed("truncated payload: " + std::to_string(bits.size()) + " of " +
                              std::to_string(width * height) + " pixels");
    }
    const char c = static_cast<char>(bytes[reader.pos()]);
    if (c != '0' && c != '1') HeaderReader::malformed("invalid P1 pixel character");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
    reader.advance(1);
  }
  reader.skip_space_and_comments();
  if (reader.pos() != bytes.size()) {
    HeaderReader::malformed("payload longer than " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
  return BitMatrix(height, width, std::move(bits));
}

BitMatrix decode_raw_bits(HeaderReader& reader, std::span<const std::uint8_t> bytes,
                          std::size_t width, std::size_t height) {
  reader.single_separator();
  const std::size_t stride = (width + 7) / 8;
  const std::size_t need = stride * height;
  const std::size_t have = bytes.size() - reader.pos();
  if (have < need) {
    HeaderReader::malformed("truncated payload: " + std::to_string(have) + " of " +
                            std::to_string(need) + " bytes");
  }
  if (have > need) HeaderReader::malformed("payload longer than header dimensions");
  BitMatrix m(height, width);
  const std::uint8_t* payload = bytes.data() + reader.pos();
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const std::uint8_t byte = payload[r * stride + c / 8];
      m.set(r, c, (byte >> (7 - c % 8)) & 1u);
    }
  }
  return m;
}

}  // namespace

BitMatrix decode_pbm(std::span<const std::uint8_t> bytes) {
  HeaderReader reader(bytes);
  const std::string magic = reader.magic();
  if (magic != "P1" && magic != "P4") {
    throw Error(ErrorCode::kMalformedFile, "netpbm: expected P1 or P4 bitmap, got " + magic);
  }
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  check_dims(width, height);
  return magic == "P1" ? decode_plain_bits(reader, bytes, width, height)
                       : decode_raw_bits(reader, bytes, width, height);
}

std::vector<std::uint8_t> encode_pbm(const BitMatrix& m) {
  const std::string header =
      "P4\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n";
  const std::size_t stride = (m.cols() + 7) / 8;
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.resize(header.size() + stride * m.rows(), 0);
  std::uint8_t* payload = out.data() + header.size();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.at(r, c)) payload[r * stride + c / 8] |= static_cast<std::uint8_t>(0x80u >> (c % 8));
    }
  }
  return out;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  HeaderReader reader(bytes);
  const std::string magic = reader.magic();
  if (magic != "P5") {
    throw Error(ErrorCode::kMalformedFile, "netpbm: expected P5 graymap, got " + magic);
  }
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval = reader.number("maxval");
  check_dims(width, height);
  if (maxval == 0) HeaderReader::malformed("maxval must be positive");
  if (maxval > 255) {
    throw Error(ErrorCode::kUnsupported,
                "netpbm: maxval " + std::to_string(maxval) + " unsupported (limit 255)");
  }
  reader.single_separator();
  const std::size_t need = width * height;
  const std::size_t have = bytes.size() - reader.pos();
  if (have < need) {
    HeaderReader::malformed("truncated payload: " + std::to_string(have) + " of " +
                            std::to_string(need) + " bytes");
  }
  if (have > need) HeaderReader::malformed("payload longer than header dimensions");
  const auto payload = bytes.subspan(reader.pos(), need);
  for (std::uint8_t v : payload) {
    if (v > maxval) HeaderReader::malformed("sample exceeds maxval");
  }
  return GrayImage(height, width, std::vector<std::uint8_t>(payload.begin(), payload.end()));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

BitMatrix load_pbm(const std::filesystem::path& path) {
  try {
    return decode_pbm(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_pbm(const BitMatrix& m, const std::filesystem::path& path) {
  write_file(path, encode_pbm(m));
}

GrayImage load_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  write_file(path, encode_pgm(img));
}

}  // namespace irisvc::netpbm
