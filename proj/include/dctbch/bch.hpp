#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dctbch/galois.hpp"

namespace dctbch {

/// Bit vector, one 0/1 value per entry.
using Bits = std::vector<std::uint8_t>;

struct DecodeResult {
  /// Decoded k-bit message. On failure, the uncorrected systematic bits of the received word.
  Bits message;
  /// Number of bits flipped by the decoder (0 on failure).
  int corrected = 0;
  bool ok = true;
};

/// Narrow-sense binary BCH code of length n = 2^m - 1.
///
/// Codewords are systematic with parity in the low-order positions:
/// bit j of a codeword is the coefficient of x^j, bits [0, n-k) are parity
/// and bits [n-k, n) are the message.
class BchCode {
 public:
  BchCode(GaloisField field, int t);

  /// Builds the code from published parameters over the default primitive polynomial;
  /// throws std::invalid_argument unless n = 2^m - 1 and k matches the designed code.
  static BchCode from_parameters(int n, int k, int t);

  const GaloisField& field() const { return field_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int t() const { return t_; }
  double rate() const { return static_cast<double>(k_) / n_; }
  const BinaryPoly& generator() const { return generator_; }

  Bits encode(std::span<const std::uint8_t> message) const;

  /// S_1 ... S_2t, stored at indices 0 ... 2t-1.
  FieldPoly syndromes(std::span<const std::uint8_t> received) const;

  /// Minimal-degree error locator sigma(X) = 1 + sigma_1 X + ... + sigma_v X^v.
  /// Absent when the required degree exceeds t.
  std::optional<FieldPoly> berlekamp_massey(std::span<const Element> syndromes) const;

  /// Error positions j with sigma(alpha^-j) = 0, ascending.
  /// Absent when sigma does not split into deg(sigma) distinct roots.
  std::optional<std::vector<int>> chien_search(std::span<const Element> sigma) const;

  /// Corrects up to t errors and re-checks the syndromes; never reports success
  /// for a word that is not a codeword after correction.
  DecodeResult decode(std::span<const std::uint8_t> received) const;

 private:
  GaloisField field_;
  int n_;
  int k_;
  int t_;
  BinaryPoly generator_;
};

}  // namespace dctbch
