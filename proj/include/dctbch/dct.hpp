#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <numbers>

namespace dctbch {

template <typename Scalar>
using Block8 = Eigen::Matrix<Scalar, 8, 8>;

using CoeffBlock = Block8<double>;

/// Orthonormal 8-point DCT-II matrix, basis(u, x) = c(u) cos((2x + 1) u pi / 16).
template <typename Scalar>
const Block8<Scalar>& dct_basis() {
  static const Block8<Scalar> basis = [] {
    Block8<Scalar> c;
    for (int u = 0; u < 8; ++u) {
      const Scalar scale = u == 0 ? std::sqrt(Scalar(1) / Scalar(8)) : std::sqrt(Scalar(2) / Scalar(8));
      for (int x = 0; x < 8; ++x) {
        c(u, x) = scale * std::cos(Scalar(2 * x + 1) * Scalar(u) * std::numbers::pi_v<Scalar> / Scalar(16));
      }
    }
    return c;
  }();
  return basis;
}

/// Forward 2-D DCT of an 8x8 pixel block after the -128 level shift.
template <typename Derived>
Block8<typename Derived::Scalar> dct2_block(const Eigen::MatrixBase<Derived>& pixels) {
  using Scalar = typename Derived::Scalar;
  const auto& c = dct_basis<Scalar>();
  const Block8<Scalar> shifted = pixels.array() - Scalar(128);
  return c * shifted * c.transpose();
}

/// Inverse of dct2_block, including the +128 level shift. No rounding or clamping.
template <typename Derived>
Block8<typename Derived::Scalar> idct2_block(const Eigen::MatrixBase<Derived>& coeffs) {
  using Scalar = typename Derived::Scalar;
  const auto& c = dct_basis<Scalar>();
  return ((c.transpose() * coeffs * c).array() + Scalar(128)).matrix();
}

/// kZigzagOrder[i] = row-major index (row * 8 + col) of the i-th coefficient in JPEG zigzag order.
inline constexpr std::array<int, 64> kZigzagOrder = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,  12, 19, 26, 33, 40, 48,
    41, 34, 27, 20, 13, 6,  7,  14, 21, 28, 35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23,
    30, 37, 44, 51, 58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

}  // namespace dctbch
