#include "irisvc/error.hpp"

namespace irisvc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kMalformedFile:
      return "malformed file";
    case ErrorCode::kUnsupported:
      return "unsupported";
    case ErrorCode::kCorruptShare:
      return "corrupt share";
    case ErrorCode::kSegmentationFailed:
      return "segmentation failed";
    case ErrorCode::kIncomparable:
      return "incomparable templates";
    case ErrorCode::kDuplicateLogin:
      return "duplicate login";
    case ErrorCode::kUnknownLogin:
      return "unknown login";
    case ErrorCode::kUnrecoverableStore:
      return "unrecoverable store";
  }
  return "unknown error";
}

}  // namespace irisvc
