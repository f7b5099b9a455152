#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dctbch/bch.hpp"

namespace dctbch {

using PixelMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit grayscale image, pixels(row, col).
struct GrayImage {
  PixelMatrix pixels;

  GrayImage() = default;
  explicit GrayImage(PixelMatrix p) : pixels(std::move(p)) {}
  GrayImage(int width, int height, std::uint8_t fill = 0) : pixels(PixelMatrix::Constant(height, width, fill)) {}

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }

  /// Pixels as doubles, for filtering.
  Eigen::ArrayXXd to_array() const { return pixels.cast<double>().array(); }
  /// Rounds half away from zero and clamps to [0, 255].
  static GrayImage from_array(const Eigen::ArrayXXd& values);

  friend bool operator==(const GrayImage& a, const GrayImage& b) {
    return a.pixels.rows() == b.pixels.rows() && a.pixels.cols() == b.pixels.cols() && a.pixels == b.pixels;
  }
};

/// Binary image; bits are row-major, 1 = black (PBM convention).
struct BitImage {
  int width = 0;
  int height = 0;
  Bits bits;
};

// Binary PGM (P5, maxval 255) and PBM (P4). Readers accept comments in the header.
GrayImage decode_pgm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);
BitImage decode_pbm(const std::string& bytes);
std::string encode_pbm(const BitImage& img);

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
BitImage read_pbm(const std::filesystem::path& path);
void write_pbm(const std::filesystem::path& path, const BitImage& img);

/// Raw bitstream files: bytes unpacked most significant bit first.
Bits read_raw_bits(const std::filesystem::path& path);
Bits decode_raw_bits(std::string_view bytes);
/// Pads the final byte with zero bits.
void write_raw_bits(const std::filesystem::path& path, const Bits& bits);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace dctbch
