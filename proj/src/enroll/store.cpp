#include "irisvc/enroll/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <string_view>
#include <utility>

#include "irisvc/error.hpp"
#include "irisvc/iris/template.hpp"
#include "irisvc/netpbm.hpp"

namespace irisvc::enroll {
namespace {

constexpr std::string_view kMagic = "IRISVCRS";
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::string_view kExtension = ".rec";

[[noreturn]] void store_error(const std::string& what) {
  throw Error(ErrorCode::kUnrecoverableStore, "unrecoverable store: " + what);
}

[[noreturn]] void io_error(const std::string& what) {
  throw Error(ErrorCode::kIo, what + ": " + std::strerror(errno));
}

class Writer {
 public:
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void blob(std::span<const std::uint8_t> b) {
    u32(static_cast<std::uint32_t>(b.size()));
    bytes(b);
  }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : in_(b) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* field) {
    if (in_.size() - pos_ < n) {
      store_error(std::string("truncated ") + field + " at offset " + std::to_string(pos_));
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32(const char* field) {
    const auto s = take(4, field);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
    return v;
  }
  std::int64_t i64(const char* field) {
    const auto s = take(8, field);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
    return static_cast<std::int64_t>(v);
  }
  std::span<const std::uint8_t> blob(const char* field) { return take(u32(field), field); }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string hex32(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

bool plain_char(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

class FileDescriptor {
 public:
  explicit FileDescriptor(int fd) : fd_(fd) {}
  ~FileDescriptor() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;
  int get() const { return fd_; }
  int release() { return std::exchange(fd_, -1); }

 private:
  int fd_;
};

// Exclusive advisory lock serialising writers on one store directory.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir)
      : fd_(::open((dir / ".lock").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644)) {
    if (fd_.get() < 0) io_error("cannot open lock file in " + dir.string());
    if (::flock(fd_.get(), LOCK_EX) != 0) io_error("cannot lock " + dir.string());
  }
  ~DirLock() { ::flock(fd_.get(), LOCK_UN); }

 private:
  FileDescriptor fd_;
};

void fsync_dir(const std::filesystem::path& dir) {
  FileDescriptor fd(::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC));
  if (fd.get() >= 0) ::fsync(fd.get());
}

void write_durably(const std::filesystem::path& target, std::span<const std::uint8_t> bytes) {
  const auto dir = target.parent_path();
  const auto tmp = dir / ("." + target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    FileDescriptor fd(::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644));
    if (fd.get() < 0) io_error("cannot create " + tmp.string());
    std::size_t done = 0;
    while (done < bytes.size()) {
      const ssize_t n = ::write(fd.get(), bytes.data() + done, bytes.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        io_error("write failed: " + tmp.string());
      }
      done += static_cast<std::size_t>(n);
    }
    if (::fsync(fd.get()) != 0) io_error("fsync failed: " + tmp.string());
    if (::close(fd.release()) != 0) io_error("close failed: " + tmp.string());
  }
  if (::rename(tmp.c_str(), target.c_str()) != 0) {
    const int saved = errno;
    ::unlink(tmp.c_str());
    errno = saved;
    io_error("rename failed: " + target.string());
  }
  fsync_dir(dir);
}

}  // namespace

void validate(const EnrollmentRecord& record) {
  if (record.login.empty()) throw Error(ErrorCode::kInvalidArgument, "record: empty login");
  for (const BitMatrix* m : {&record.db_share, &record.mask}) {
    if (m->rows() != iris::kTemplateRows || m->cols() != iris::kTemplateCols) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record '" + record.login + "': share and mask must be " +
                      std::to_string(iris::kTemplateRows) + "x" +
                      std::to_string(iris::kTemplateCols));
    }
  }
}

std::vector<std::uint8_t> encode_record(const EnrollmentRecord& record) {
  validate(record);
  Writer w;
  w.bytes({reinterpret_cast<const std::uint8_t*>(kMagic.data()), kMagic.size()});
  w.u32(kFormatVersion);
  w.u32(record.scheme_version);
  w.i64(record.created_at);
  w.blob({reinterpret_cast<const std::uint8_t*>(record.login.data()), record.login.size()});
  w.blob(netpbm::encode_pbm(record.db_share));
  w.blob(netpbm::encode_pbm(record.mask));
  const std::uint32_t crc = crc32_of(w.data());
  w.u32(crc);
  return std::move(w.data());
}

EnrollmentRecord decode_record(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size() + 4) {
    store_error("truncated record: " + std::to_string(bytes.size()) +
                " bytes, checksum trailer missing at offset " + std::to_string(bytes.size()));
  }
  const std::size_t trailer = bytes.size() - 4;
  const auto body = bytes.first(trailer);
  std::uint32_t stored = 0;
  for (int i = 3; i >= 0; --i) stored = (stored << 8) | bytes[trailer + static_cast<std::size_t>(i)];
  const std::uint32_t computed = crc32_of(body);
  if (stored != computed) {
    store_error("checksum mismatch at offset " + std::to_string(trailer) + " (stored " +
                hex32(stored) + ", computed " + hex32(computed) + ")");
  }

  Reader r(body);
  const auto magic = r.take(kMagic.size(), "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) store_error("bad magic at offset 0");
  const std::size_t version_at = r.pos();
  if (r.u32("format version") != kFormatVersion) {
    store_error("unsupported format version at offset " + std::to_string(version_at));
  }
  EnrollmentRecord record;
  record.scheme_version = r.u32("scheme version");
  record.created_at = r.i64("created_at");
  const auto login = r.blob("login");
  record.login.assign(login.begin(), login.end());
  const std::size_t share_at = r.pos();
  const auto share = r.blob("share");
  const std::size_t mask_at = r.pos();
  const auto mask = r.blob("mask");
  if (r.pos() != body.size()) {
    store_error("trailing bytes at offset " + std::to_string(r.pos()));
  }
  try {
    record.db_share = netpbm::decode_pbm(share);
  } catch (const Error& e) {
    store_error("share at offset " + std::to_string(share_at) + ": " + e.what());
  }
  try {
    record.mask = netpbm::decode_pbm(mask);
  } catch (const Error& e) {
    store_error("mask at offset " + std::to_string(mask_at) + ": " + e.what());
  }
  try {
    validate(record);
  } catch (const Error& e) {
    store_error(e.what());
  }
  return record;
}

std::string record_file_name(const std::string& login) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string name;
  for (unsigned char c : login) {
    if (plain_char(c)) {
      name.push_back(static_cast<char>(c));
    } else {
      name.push_back('%');
      name.push_back(kHex[c >> 4]);
      name.push_back(kHex[c & 0xF]);
    }
  }
  return name + std::string(kExtension);
}

RecordStore RecordStore::open(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create store directory " + dir.string());
  }
  RecordStore store(dir);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_regular_file() || name.starts_with(".") || !name.ends_with(kExtension)) continue;
    EnrollmentRecord record;
    try {
      record = decode_record(netpbm::read_file(entry.path()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnrecoverableStore) throw;
      throw Error(ErrorCode::kUnrecoverableStore, entry.path().string() + ": " + e.what());
    }
    if (record_file_name(record.login) != name) {
      store_error(entry.path().string() + ": login '" + record.login + "' does not match file name");
    }
    store.records_.emplace(record.login, std::move(record));
  }
  return store;
}

bool RecordStore::contains(const std::string& login) const { return records_.contains(login); }

const EnrollmentRecord& RecordStore::get(const std::string& login) const {
  const auto it = records_.find(login);
  if (it == records_.end()) {
    throw Error(ErrorCode::kUnknownLogin, "unknown login '" + login + "'");
  }
  return it->second;
}

std::vector<std::string> RecordStore::list() const {
  std::vector<std::string> logins;
  logins.reserve(records_.size());
  for (const auto& [login, record] : records_) logins.push_back(login);
  return logins;
}

void RecordStore::write_record(const EnrollmentRecord& record) {
  write_durably(dir_ / record_file_name(record.login), encode_record(record));
  records_.insert_or_assign(record.login, record);
}

void RecordStore::put(const EnrollmentRecord& record) {
  validate(record);
  DirLock lock(dir_);
  write_record(record);
}

void RecordStore::insert(const EnrollmentRecord& record) {
  validate(record);
  DirLock lock(dir_);
  if (records_.contains(record.login) ||
      std::filesystem::exists(dir_ / record_file_name(record.login))) {
    throw Error(ErrorCode::kDuplicateLogin, "login '" + record.login + "' is already enrolled");
  }
  write_record(record);
}

void RecordStore::remove(const std::string& login) {
  DirLock lock(dir_);
  const auto file = dir_ / record_file_name(login);
  if (!records_.contains(login) && !std::filesystem::exists(file)) {
    throw Error(ErrorCode::kUnknownLogin, "unknown login '" + login + "'");
  }
  if (::unlink(file.c_str()) != 0 && errno != ENOENT) io_error("cannot remove " + file.string());
  fsync_dir(dir_);
  records_.erase(login);
}

}  // namespace irisvc::enroll
