#pragma once

#include <stdexcept>
#include <string>

namespace irisvc {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kIo,
  kMalformedFile,
  kUnsupported,
  kCorruptShare,
  kSegmentationFailed,
  kIncomparable,
  kDuplicateLogin,
  kUnknownLogin,
  kUnrecoverableStore,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library is an Error; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace irisvc
