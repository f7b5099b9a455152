#include "dctbch/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dctbch/random.hpp"

namespace dctbch {

GrayImage synthetic_image(int width, int height, std::uint64_t seed) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("synthetic_image: dimensions must be positive");
  KeyedRng rng(seed);
  constexpr double tau = 2.0 * std::numbers::pi;

  const double gx = rng.uniform() - 0.5;
  const double gy = rng.uniform() - 0.5;

  struct Disc {
    double cx, cy, radius, amplitude;
  };
  Disc discs[6];
  for (auto& d : discs) {
    d = {rng.uniform() * width, rng.uniform() * height, (0.05 + 0.2 * rng.uniform()) * std::min(width, height),
         (rng.uniform() - 0.5) * 90.0};
  }

  struct Wave {
    double fx, fy, phase, amplitude;
  };
  Wave waves[4];
  for (auto& w : waves) {
    const double angle = rng.uniform() * tau;
    const double period = 3.0 + 20.0 * rng.uniform();
    w = {std::cos(angle) / period, std::sin(angle) / period, rng.uniform() * tau, 3.0 + 7.0 * rng.uniform()};
  }

  Eigen::ArrayXXd values(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double u = static_cast<double>(c) / width - 0.5;
      const double v = static_cast<double>(r) / height - 0.5;
      double p = 128.0 + 80.0 * (gx * u + gy * v);
      for (const auto& d : discs) {
        const double dist = std::hypot(c - d.cx, r - d.cy) / d.radius;
        p += d.amplitude / (1.0 + std::exp(8.0 * (dist - 1.0)));
      }
      for (const auto& w : waves) p += w.amplitude * std::sin(tau * (w.fx * c + w.fy * r) + w.phase);
      p += 2.0 * rng.normal();
      values(r, c) = std::clamp(p, 16.0, 240.0);
    }
  }
  return GrayImage::from_array(values);
}

}  // namespace dctbch
