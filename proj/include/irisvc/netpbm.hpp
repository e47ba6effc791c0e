#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "irisvc/bit_matrix.hpp"
#include "irisvc/gray_image.hpp"

// Netpbm codecs. Bitmaps read as P1 (plain) or P4 (raw) and are always
// written as P4. Graymaps are P5 with maxval <= 255; samples are returned
// as stored, without rescaling to 255.
namespace irisvc::netpbm {

BitMatrix decode_pbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pbm(const BitMatrix& m);

GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

BitMatrix load_pbm(const std::filesystem::path& path);
void save_pbm(const BitMatrix& m, const std::filesystem::path& path);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace irisvc::netpbm
