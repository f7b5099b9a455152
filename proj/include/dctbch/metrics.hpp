#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "dctbch/image.hpp"

namespace dctbch {

/// Mean squared pixel error. Throws std::invalid_argument on a size mismatch.
double mse(const GrayImage& a, const GrayImage& b);

/// 10 log10(255^2 / MSE). Absent when the images are identical (infinite PSNR).
std::optional<double> psnr(const GrayImage& a, const GrayImage& b);
std::optional<double> psnr_from_mse(double mse);

/// "inf" for an absent value, otherwise fixed with `decimals` places.
std::string format_db(const std::optional<double>& db, int decimals = 4);

/// Sum(w w') / Sum(w^2) over {0,1} bits. The form is asymmetric: an all-ones w'
/// scores 1.0 against any w, so report it together with ber().
/// Throws std::domain_error when w has no set bit and std::invalid_argument on a length mismatch.
double ncc(std::span<const std::uint8_t> w, std::span<const std::uint8_t> w_prime);

/// Hamming distance / length. Empty inputs give 0.
double ber(std::span<const std::uint8_t> bits, std::span<const std::uint8_t> reference);

struct QualityReport {
  double mse = 0.0;
  std::optional<double> psnr_db;
  double ncc = 0.0;
  double ber = 0.0;
};

}  // namespace dctbch
