#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dctbch {

/// Field element of GF(2^m) as a polynomial-basis bitmask (bit i is the coefficient of x^i).
using Element = std::uint16_t;

/// Polynomial with field-element coefficients, index = power.
using FieldPoly = std::vector<Element>;

/// Polynomial over GF(2), up to degree 255. Bit i holds the coefficient of x^i.
class BinaryPoly {
 public:
  static constexpr int kMaxDegree = 255;

  BinaryPoly() = default;
  explicit BinaryPoly(std::uint64_t mask) : bits_(mask) {}

  /// Highest set power, or -1 for the zero polynomial.
  int degree() const;
  bool coeff(int power) const { return bits_.test(static_cast<std::size_t>(power)); }
  void set_coeff(int power, bool value = true) { bits_.set(static_cast<std::size_t>(power), value); }
  bool is_zero() const { return bits_.none(); }

  /// Low 64 coefficients as a mask; throws if the degree exceeds 63.
  std::uint64_t to_mask() const;

  /// e.g. "x^8 + x^7 + x^6 + x^4 + 1".
  std::string to_string() const;

  BinaryPoly shifted(int places) const;

  friend BinaryPoly operator+(const BinaryPoly& a, const BinaryPoly& b);
  friend BinaryPoly operator*(const BinaryPoly& a, const BinaryPoly& b);
  friend BinaryPoly operator%(const BinaryPoly& a, const BinaryPoly& b);
  friend bool operator==(const BinaryPoly& a, const BinaryPoly& b) { return a.bits_ == b.bits_; }

 private:
  std::bitset<kMaxDegree + 1> bits_;
};

/// GF(2^m) with eagerly built log/antilog tables. Immutable after construction.
class GaloisField {
 public:
  static constexpr int kMinDegree = 2;
  static constexpr int kMaxDegree = 8;

  /// Conventional primitive polynomial for degree m (x^4+x+1 for m = 4, x^5+x^2+1 for m = 5).
  static std::uint32_t default_primitive_poly(int m);

  explicit GaloisField(int m);
  /// Throws std::invalid_argument when the polynomial has the wrong degree or is not primitive.
  GaloisField(int m, std::uint32_t primitive_poly);

  int m() const { return m_; }
  /// Multiplicative group order n = 2^m - 1, which is also the BCH block length.
  int order() const { return order_; }
  /// Number of elements 2^m.
  int size() const { return order_ + 1; }
  std::uint32_t primitive_poly() const { return poly_; }

  /// antilog[i] = alpha^i for i in [0, 2^m - 2].
  std::span<const Element> antilog() const { return {antilog_.data(), static_cast<std::size_t>(order_)}; }
  /// Discrete log of a nonzero element; absent for 0.
  std::optional<int> log(Element a) const { return log_.at(a); }

  /// alpha^e with e taken mod 2^m - 1 (negative exponents allowed).
  Element alpha_pow(long long e) const;

  static Element add(Element a, Element b) { return static_cast<Element>(a ^ b); }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[static_cast<std::size_t>(*log_[a] + *log_[b])];
  }
  /// Throws std::domain_error for a = 0.
  Element inv(Element a) const;
  /// Throws std::domain_error for b = 0.
  Element div(Element a, Element b) const;
  /// 0^0 is 1 by convention; 0^e = 0 for e > 0. Negative e requires a != 0.
  Element pow(Element a, long long e) const;
  /// Unique square root a^(2^(m-1)).
  Element sqrt(Element a) const;
  /// All cube roots of a in ascending order: exactly one when gcd(3, 2^m - 1) = 1,
  /// otherwise zero or three for a != 0.
  std::vector<Element> cbrt(Element a) const;

  /// Horner evaluation of poly (index = power) at x.
  Element eval(std::span<const Element> poly, Element x) const;

  bool contains(Element a) const { return a <= static_cast<Element>(order_); }

 private:
  int m_;
  int order_;
  std::uint32_t poly_;
  // antilog_ is stored twice over so mul needs no modulo.
  std::vector<Element> antilog_;
  std::vector<std::optional<int>> log_;
};

/// Minimal polynomial of alpha^i over GF(2): product over the cyclotomic class of i.
/// Requires 1 <= i <= 2^m - 2.
BinaryPoly minimal_polynomial(const GaloisField& field, int i);

/// Narrow-sense BCH generator g(x) = LCM{phi_1, ..., phi_2t}.
/// Throws std::invalid_argument when t < 1 or the code would have no message bits.
BinaryPoly generator_polynomial(const GaloisField& field, int t);

}  // namespace dctbch
