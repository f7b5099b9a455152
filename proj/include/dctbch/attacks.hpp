#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dctbch/image.hpp"

namespace dctbch {

// Every attack preserves the image dimensions and returns values in [0, 255].

/// Adaptive 3x3 Wiener filter. The noise power is the mean of all local
/// variances; borders use symmetric (edge-inclusive) mirroring.
GrayImage wiener3x3(const GrayImage& img);

GrayImage median3x3(const GrayImage& img);

/// Adds N(0, variance * 255^2) to every pixel. variance is on the [0, 1] intensity scale.
GrayImage gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed);

/// Normalised 3-tap Gaussian weights for a separable blur.
std::array<double, 3> gaussian_kernel3(double sigma);
GrayImage gaussian_filter(const GrayImage& img, double sigma = 0.5);

/// Bilinear rotation about the image centre, counter-clockwise for positive
/// degrees. Pixels that map outside the source are 0. Requires |degrees| < 45.
GrayImage rotate(const GrayImage& img, double degrees);

/// Block DCT quantisation round trip with the standard luminance table scaled
/// to `quality` (1..100). Partial edge blocks are padded by edge replication.
GrayImage jpeg_like(const GrayImage& img, int quality = 70);
/// Luminance quantisation table for a quality factor, row-major.
std::array<int, 64> jpeg_luma_table(int quality);

/// Bilinear downscale by two then bilinear upscale back. Requires even dimensions.
GrayImage resize_halfback(const GrayImage& img);

struct AttackSpec {
  enum class Kind { none, wiener3x3, median3x3, gaussian_noise, gaussian_filter, rotate, jpeg_like, resize_halfback };

  Kind kind = Kind::none;
  double variance = 0.01;
  double sigma = 0.5;
  double degrees = 2.0;
  /// For rotate: apply the inverse rotation afterwards, as a re-aligned extraction would.
  bool realign = false;
  int quality = 70;

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

/// Parses the CLI form, e.g. "wiener3x3", "median3x3", "noise:var=0.01",
/// "gaussian:sigma=0.5", "rotate:deg=2", "rotate:deg=2:realign", "jpeg:q=70",
/// "resize:half" or "none". Throws ConfigError.
AttackSpec parse_attack(std::string_view text);
/// Canonical CLI form; parse_attack(to_string(s)) == s.
std::string to_string(const AttackSpec& spec);
/// Comma-separated list of specs. An empty string gives an empty list.
std::vector<AttackSpec> parse_attack_list(std::string_view text);

/// The seed only affects gaussian_noise.
GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec, std::uint64_t seed);

}  // namespace dctbch
