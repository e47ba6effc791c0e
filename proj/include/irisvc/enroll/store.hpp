#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "irisvc/bit_matrix.hpp"

namespace irisvc::enroll {

inline constexpr std::uint32_t kSchemeVersion = 1;

struct EnrollmentRecord {
  std::string login;
  BitMatrix db_share;  // 20x480
  BitMatrix mask;      // 20x480, stored in the clear
  std::int64_t created_at = 0;  // seconds since the Unix epoch
  std::uint32_t scheme_version = kSchemeVersion;

  friend bool operator==(const EnrollmentRecord&, const EnrollmentRecord&) = default;
};

// Throws kInvalidArgument for an empty login or wrong share/mask dimensions.
void validate(const EnrollmentRecord& record);

// Record file layout, integers little-endian:
//   "IRISVCRS"  u32 format version  u32 scheme version  i64 created_at
//   u32 n + login bytes   u32 n + share as PBM P4   u32 n + mask as PBM P4
//   u32 CRC-32 of every preceding byte
std::vector<std::uint8_t> encode_record(const EnrollmentRecord& record);
// Throws kUnrecoverableStore naming the byte offset of the failure.
EnrollmentRecord decode_record(std::span<const std::uint8_t> bytes);

// File name used for a login: bytes outside [A-Za-z0-9_-] are %XX-escaped,
// followed by ".rec".
std::string record_file_name(const std::string& login);

// Directory of per-login record files. Mutations take an exclusive advisory
// lock on <dir>/.lock and replace files by write-fsync-rename, so a reader
// sees either the old or the new record.
class RecordStore {
 public:
  // Creates the directory if needed and loads every record; any corrupt
  // record file raises kUnrecoverableStore.
  static RecordStore open(const std::filesystem::path& dir);

  const std::filesystem::path& path() const noexcept { return dir_; }

  bool contains(const std::string& login) const;
  // Throws kUnknownLogin.
  const EnrollmentRecord& get(const std::string& login) const;
  // Logins in lexicographic byte order.
  std::vector<std::string> list() const;
  std::size_t size() const noexcept { return records_.size(); }

  // Insert or replace.
  void put(const EnrollmentRecord& record);
  // Insert only; throws kDuplicateLogin if the login exists in memory or on disk.
  void insert(const EnrollmentRecord& record);
  // Throws kUnknownLogin.
  void remove(const std::string& login);

 private:
  explicit RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void write_record(const EnrollmentRecord& record);

  std::filesystem::path dir_;
  std::map<std::string, EnrollmentRecord> records_;
};

}  // namespace irisvc::enroll
