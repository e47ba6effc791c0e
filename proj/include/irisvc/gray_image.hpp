#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "irisvc/error.hpp"

namespace irisvc {

// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
      : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {}
  GrayImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels)
      : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
    if (pixels_.size() != rows_ * cols_) {
      throw Error(ErrorCode::kInvalidArgument, "gray image: pixel count does not match dimensions");
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(std::size_t r, std::size_t c) const noexcept { return pixels_[r * cols_ + c]; }
  std::uint8_t& at(std::size_t r, std::size_t c) noexcept { return pixels_[r * cols_ + c]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace irisvc
