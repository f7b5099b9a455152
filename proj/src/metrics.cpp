#include "dctbch/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dctbch {

double mse(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw std::invalid_argument("mse: image sizes differ");
  if (a.pixels.size() == 0) return 0.0;
  const Eigen::ArrayXXd diff = a.to_array() - b.to_array();
  return diff.square().mean();
}

std::optional<double> psnr_from_mse(double mse) {
  if (mse <= 0.0) return std::nullopt;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::optional<double> psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

std::string format_db(const std::optional<double>& db, int decimals) {
  if (!db) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, *db);
  return buf;
}

double ncc(std::span<const std::uint8_t> w, std::span<const std::uint8_t> w_prime) {
  if (w.size() != w_prime.size()) throw std::invalid_argument("ncc: watermark sizes differ");
  std::size_t cross = 0;
  std::size_t energy = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const unsigned a = w[i] & 1U;
    cross += a * (w_prime[i] & 1U);
    energy += a;
  }
  if (energy == 0) throw std::domain_error("ncc: reference watermark has no set bits");
  return static_cast<double>(cross) / static_cast<double>(energy);
}

double ber(std::span<const std::uint8_t> bits, std::span<const std::uint8_t> reference) {
  if (bits.size() != reference.size()) throw std::invalid_argument("ber: bit stream lengths differ");
  if (bits.empty()) return 0.0;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) errors += ((bits[i] ^ reference[i]) & 1U);
  return static_cast<double>(errors) / static_cast<double>(bits.size());
}

}  // namespace dctbch
