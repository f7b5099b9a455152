#include "dctbch/galois.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dctbch {

int BinaryPoly::degree() const {
  for (int i = kMaxDegree; i >= 0; --i) {
    if (bits_.test(static_cast<std::size_t>(i))) return i;
  }
  return -1;
}

std::uint64_t BinaryPoly::to_mask() const {
  if (degree() > 63) throw std::overflow_error("BinaryPoly::to_mask: degree exceeds 63");
  std::uint64_t mask = 0;
  for (int i = 0; i <= degree(); ++i) {
    if (coeff(i)) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::string BinaryPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(i)) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += "1";
    } else if (i == 1) {
      out += "x";
    } else {
      out += "x^" + std::to_string(i);
    }
  }
  return out;
}

BinaryPoly BinaryPoly::shifted(int places) const {
  if (places < 0) throw std::invalid_argument("BinaryPoly::shifted: negative shift");
  if (!is_zero() && degree() + places > kMaxDegree) throw std::overflow_error("BinaryPoly::shifted: degree overflow");
  BinaryPoly out;
  out.bits_ = bits_ << static_cast<std::size_t>(places);
  return out;
}

BinaryPoly operator+(const BinaryPoly& a, const BinaryPoly& b) {
  BinaryPoly out;
  out.bits_ = a.bits_ ^ b.bits_;
  return out;
}

BinaryPoly operator*(const BinaryPoly& a, const BinaryPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.degree() + b.degree() > BinaryPoly::kMaxDegree) throw std::overflow_error("BinaryPoly: product degree overflow");
  BinaryPoly out;
  for (int i = 0; i <= b.degree(); ++i) {
    if (b.coeff(i)) out.bits_ ^= a.bits_ << static_cast<std::size_t>(i);
  }
  return out;
}

BinaryPoly operator%(const BinaryPoly& a, const BinaryPoly& b) {
  const int db = b.degree();
  if (db < 0) throw std::domain_error("BinaryPoly: modulo by zero polynomial");
  BinaryPoly rem = a;
  for (int d = rem.degree(); d >= db; d = rem.degree()) {
    rem.bits_ ^= b.bits_ << static_cast<std::size_t>(d - db);
  }
  return rem;
}

std::uint32_t GaloisField::default_primitive_poly(int m) {
  switch (m) {
    case 2: return 0b111;          // x^2 + x + 1
    case 3: return 0b1011;         // x^3 + x + 1
    case 4: return 0b10011;        // x^4 + x + 1
    case 5: return 0b100101;       // x^5 + x^2 + 1
    case 6: return 0b1000011;      // x^6 + x + 1
    case 7: return 0b10001001;     // x^7 + x^3 + 1
    case 8: return 0b100011101;    // x^8 + x^4 + x^3 + x^2 + 1
    default:
      throw std::invalid_argument("GaloisField: unsupported degree m = " + std::to_string(m));
  }
}

GaloisField::GaloisField(int m) : GaloisField(m, default_primitive_poly(m)) {}

GaloisField::GaloisField(int m, std::uint32_t primitive_poly) : m_(m), order_(0), poly_(primitive_poly) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw std::invalid_argument("GaloisField: unsupported degree m = " + std::to_string(m));
  }
  if ((primitive_poly >> m) != 1U) {
    throw std::invalid_argument("GaloisField: polynomial " + BinaryPoly(primitive_poly).to_string() +
                                " does not have degree " + std::to_string(m));
  }
  order_ = (1 << m) - 1;
  antilog_.resize(2 * static_cast<std::size_t>(order_));
  log_.assign(static_cast<std::size_t>(order_) + 1, std::nullopt);

  std::uint32_t x = 1;
  for (int i = 0; i < order_; ++i) {
    if (i > 0 && x == 1) {
      throw std::invalid_argument("GaloisField: polynomial " + BinaryPoly(primitive_poly).to_string() +
                                  " is not primitive (alpha has order " + std::to_string(i) + ")");
    }
    antilog_[static_cast<std::size_t>(i)] = static_cast<Element>(x);
    log_[x] = i;
    x <<= 1;
    if (x >> m) x ^= primitive_poly;
  }
  if (x != 1) {
    // Reducible polynomials can cycle without ever returning to 1.
    throw std::invalid_argument("GaloisField: polynomial " + BinaryPoly(primitive_poly).to_string() +
                                " is not primitive");
  }
  std::copy_n(antilog_.begin(), order_, antilog_.begin() + order_);
}

Element GaloisField::alpha_pow(long long e) const {
  long long r = e % order_;
  if (r < 0) r += order_;
  return antilog_[static_cast<std::size_t>(r)];
}

Element GaloisField::inv(Element a) const {
  if (a == 0) throw std::domain_error("GaloisField::inv: zero has no inverse");
  return alpha_pow(order_ - *log_.at(a));
}

Element GaloisField::div(Element a, Element b) const {
  if (b == 0) throw std::domain_error("GaloisField::div: division by zero");
  if (a == 0) return 0;
  return alpha_pow(static_cast<long long>(*log_[a]) - *log_[b]);
}

Element GaloisField::pow(Element a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("GaloisField::pow: negative power of zero");
    return e == 0 ? 1 : 0;
  }
  return alpha_pow(static_cast<long long>(*log_.at(a)) * (e % order_));
}

Element GaloisField::sqrt(Element a) const {
  if (a == 0) return 0;
  // Frobenius inverse: halve the exponent mod the odd group order.
  const int l = *log_.at(a);
  return alpha_pow(l % 2 == 0 ? l / 2 : (l + order_) / 2);
}

std::vector<Element> GaloisField::cbrt(Element a) const {
  if (a == 0) return {0};
  const int l = *log_.at(a);
  if (order_ % 3 != 0) {
    // 3 is invertible mod the group order.
    int inv3 = 1;
    while ((3 * inv3) % order_ != 1) ++inv3;
    return {alpha_pow(static_cast<long long>(l) * inv3)};
  }
  if (l % 3 != 0) return {};
  const int third = order_ / 3;
  std::vector<Element> roots{alpha_pow(l / 3), alpha_pow(l / 3 + third), alpha_pow(l / 3 + 2 * third)};
  std::sort(roots.begin(), roots.end());
  return roots;
}

Element GaloisField::eval(std::span<const Element> poly, Element x) const {
  Element acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = static_cast<Element>(mul(acc, x) ^ *it);
  return acc;
}

namespace {

std::vector<int> cyclotomic_class(int i, int n) {
  std::vector<int> cls;
  int c = i % n;
  do {
    cls.push_back(c);
    c = (2 * c) % n;
  } while (c != i % n);
  return cls;
}

}  // namespace

BinaryPoly minimal_polynomial(const GaloisField& field, int i) {
  const int n = field.order();
  if (i < 1 || i > n - 1) {
    throw std::invalid_argument("minimal_polynomial: exponent " + std::to_string(i) + " outside [1, " +
                                std::to_string(n - 1) + "]");
  }
  FieldPoly prod{1};
  for (int c : cyclotomic_class(i, n)) {
    const Element root = field.alpha_pow(c);
    FieldPoly next(prod.size() + 1, 0);
    for (std::size_t d = 0; d < prod.size(); ++d) {
      next[d + 1] ^= prod[d];
      next[d] ^= field.mul(prod[d], root);
    }
    prod = std::move(next);
  }
  BinaryPoly out;
  for (std::size_t d = 0; d < prod.size(); ++d) {
    if (prod[d] > 1) throw std::logic_error("minimal_polynomial: coefficient outside GF(2)");
    out.set_coeff(static_cast<int>(d), prod[d] == 1);
  }
  return out;
}

BinaryPoly generator_polynomial(const GaloisField& field, int t) {
  const int n = field.order();
  if (t < 1) throw std::invalid_argument("generator_polynomial: t must be >= 1");
  if (2 * t > n - 1) {
    throw std::invalid_argument("generator_polynomial: t = " + std::to_string(t) + " too large for GF(2^" +
                                std::to_string(field.m()) + ")");
  }
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  BinaryPoly g(1);
  for (int i = 1; i <= 2 * t; ++i) {
    if (covered[static_cast<std::size_t>(i)]) continue;
    for (int c : cyclotomic_class(i, n)) covered[static_cast<std::size_t>(c)] = true;
    g = g * minimal_polynomial(field, i);
  }
  if (g.degree() >= n) {
    throw std::invalid_argument("generator_polynomial: t = " + std::to_string(t) + " leaves no message bits");
  }
  return g;
}

}  // namespace dctbch
