#include "dctbch/bch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dctbch {

BchCode::BchCode(GaloisField field, int t)
    : field_(std::move(field)), n_(field_.order()), k_(0), t_(t), generator_(generator_polynomial(field_, t)) {
  k_ = n_ - generator_.degree();
}

BchCode BchCode::from_parameters(int n, int k, int t) {
  int m = 0;
  while (m <= GaloisField::kMaxDegree && (1 << m) - 1 < n) ++m;
  if (m > GaloisField::kMaxDegree || (1 << m) - 1 != n) {
    throw std::invalid_argument("BCH length n = " + std::to_string(n) + " is not 2^m - 1 for a supported m");
  }
  BchCode code(GaloisField(m), t);
  if (code.k() != k) {
    throw std::invalid_argument("no binary BCH(" + std::to_string(n) + ", " + std::to_string(k) + ", " +
                                std::to_string(t) + "); t = " + std::to_string(t) + " gives k = " +
                                std::to_string(code.k()));
  }
  return code;
}

Bits BchCode::encode(std::span<const std::uint8_t> message) const {
  if (static_cast<int>(message.size()) != k_) {
    throw std::invalid_argument("BchCode::encode: message has " + std::to_string(message.size()) +
                                " bits, expected " + std::to_string(k_));
  }
  const int parity_len = n_ - k_;
  BinaryPoly shifted;
  for (int i = 0; i < k_; ++i) {
    if (message[static_cast<std::size_t>(i)]) shifted.set_coeff(i + parity_len);
  }
  const BinaryPoly parity = shifted % generator_;

  Bits codeword(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < parity_len; ++i) codeword[static_cast<std::size_t>(i)] = parity.coeff(i) ? 1 : 0;
  std::copy(message.begin(), message.end(), codeword.begin() + parity_len);
  return codeword;
}

FieldPoly BchCode::syndromes(std::span<const std::uint8_t> received) const {
  if (static_cast<int>(received.size()) != n_) {
    throw std::invalid_argument("BchCode::syndromes: word has " + std::to_string(received.size()) +
                                " bits, expected " + std::to_string(n_));
  }
  FieldPoly s(static_cast<std::size_t>(2 * t_), 0);
  for (int i = 1; i <= 2 * t_; ++i) {
    const Element x = field_.alpha_pow(i);
    Element acc = 0;
    for (int j = n_ - 1; j >= 0; --j) {
      acc = static_cast<Element>(field_.mul(acc, x) ^ (received[static_cast<std::size_t>(j)] & 1U));
    }
    s[static_cast<std::size_t>(i - 1)] = acc;
  }
  return s;
}

std::optional<FieldPoly> BchCode::berlekamp_massey(std::span<const Element> syndromes) const {
  const std::size_t len = syndromes.size();
  FieldPoly c(len + 1, 0);
  FieldPoly b(len + 1, 0);
  c[0] = 1;
  b[0] = 1;
  int l = 0;
  std::size_t shift = 1;
  Element last_discrepancy = 1;

  for (std::size_t r = 0; r < len; ++r) {
    Element d = syndromes[r];
    for (int i = 1; i <= l; ++i) {
      d ^= field_.mul(c[static_cast<std::size_t>(i)], syndromes[r - static_cast<std::size_t>(i)]);
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    const Element coef = field_.div(d, last_discrepancy);
    FieldPoly prev = c;
    for (std::size_t i = 0; i + shift <= len; ++i) c[i + shift] ^= field_.mul(coef, b[i]);
    if (2 * l <= static_cast<int>(r)) {
      l = static_cast<int>(r) + 1 - l;
      b = std::move(prev);
      last_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
  }

  if (l > t_) return std::nullopt;
  c.resize(static_cast<std::size_t>(l) + 1);
  return c;
}

std::optional<std::vector<int>> BchCode::chien_search(std::span<const Element> sigma) const {
  int degree = static_cast<int>(sigma.size()) - 1;
  while (degree > 0 && sigma[static_cast<std::size_t>(degree)] == 0) --degree;
  // Declared length is the locator degree; a vanishing leading term means a root deficit.
  const int declared = static_cast<int>(sigma.size()) - 1;

  std::vector<int> positions;
  for (int j = 0; j < n_; ++j) {
    if (field_.eval(sigma, field_.alpha_pow(-j)) == 0) positions.push_back(j);
  }
  if (static_cast<int>(positions.size()) != declared || degree != declared) return std::nullopt;
  return positions;
}

DecodeResult BchCode::decode(std::span<const std::uint8_t> received) const {
  const FieldPoly s = syndromes(received);
  DecodeResult result;
  result.message.assign(received.begin() + (n_ - k_), received.end());

  if (std::all_of(s.begin(), s.end(), [](Element e) { return e == 0; })) return result;

  const auto fail = [&result] {
    result.ok = false;
    result.corrected = 0;
    return result;
  };

  const auto sigma = berlekamp_massey(s);
  if (!sigma) return fail();
  const auto positions = chien_search(*sigma);
  if (!positions) return fail();

  Bits corrected(received.begin(), received.end());
  for (int j : *positions) corrected[static_cast<std::size_t>(j)] ^= 1;
  const FieldPoly check = syndromes(corrected);
  if (!std::all_of(check.begin(), check.end(), [](Element e) { return e == 0; })) return fail();

  result.message.assign(corrected.begin() + (n_ - k_), corrected.end());
  result.corrected = static_cast<int>(positions->size());
  return result;
}

}  // namespace dctbch
