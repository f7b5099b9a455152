#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>

#include "dctbch/bch.hpp"
#include "dctbch/galois.hpp"
#include "dctbch/root_lut.hpp"

namespace dctbch {

/// Syndrome pair (S1, S3) of the double-error-correcting BCH code over GF(2^m).
/// The even syndromes are Frobenius squares of these and carry no information.
struct SyndromePair {
  Element s1 = 0;
  Element s3 = 0;

  bool is_zero() const { return s1 == 0 && s3 == 0; }
  friend bool operator==(const SyndromePair&, const SyndromePair&) = default;
};

/// 2m watermark bits carried by one block, as a syndrome pair.
using WatermarkChunk = SyndromePair;

/// Packs bits [0, m) into s1 and [m, 2m) into s3, least significant bit first.
WatermarkChunk chunk_from_bits(std::span<const std::uint8_t> bits, int m);
/// Inverse of chunk_from_bits.
void append_chunk_bits(const WatermarkChunk& chunk, int m, Bits& out);

/// Set of at most three distinct cover-bit positions, kept sorted.
class FlipPattern {
 public:
  static constexpr std::size_t kMaxWeight = 3;

  FlipPattern() = default;
  /// Throws std::invalid_argument on duplicates, negatives or more than three positions.
  FlipPattern(std::initializer_list<int> positions);

  std::size_t weight() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const int> positions() const { return {pos_.data(), size_}; }

  friend bool operator==(const FlipPattern& a, const FlipPattern& b) {
    return a.size_ == b.size_ && std::equal(a.pos_.begin(), a.pos_.begin() + a.size_, b.pos_.begin());
  }

 private:
  std::array<int, kMaxWeight> pos_{};
  std::size_t size_ = 0;
};

/// Parity-check rows alpha^(1 j) and alpha^(3 j) for j in [0, n).
class ParityCheck {
 public:
  using Matrix = Eigen::Matrix<Element, 2, Eigen::Dynamic>;

  explicit ParityCheck(GaloisField field);

  const GaloisField& field() const { return field_; }
  int n() const { return field_.order(); }
  static constexpr std::array<int, 2> rows() { return {1, 3}; }
  const Matrix& matrix() const { return h_; }

 private:
  GaloisField field_;
  Matrix h_;
};

/// I = r H^T over the stored rows. This is the blind extraction function.
SyndromePair extract_syndrome(const ParityCheck& pc, std::span<const std::uint8_t> bits);

/// e H^T for a flip pattern.
SyndromePair syndrome_of(const ParityCheck& pc, const FlipPattern& pattern);

/// S = chunk - v H^T; a pattern e with e H^T = S turns the cover v into a carrier of chunk.
SyndromePair target_syndrome(const ParityCheck& pc, std::span<const std::uint8_t> cover, const WatermarkChunk& chunk);

/// Work counter for comparing the two flip searches: table lookups for the LUT
/// search, locator-polynomial point evaluations for the Chien search.
struct FlipSearchStats {
  std::size_t probes = 0;
};

/// Minimum-weight flip pattern realising S, with roots read from the lookup tables.
/// Absent when no pattern of weight <= 3 exists.
std::optional<FlipPattern> find_flip_pattern_lut(const ParityCheck& pc, const RootTables& tables,
                                                 const SyndromePair& s, FlipSearchStats* stats = nullptr);

/// Same contract as find_flip_pattern_lut, but every locator root is found by
/// evaluating the polynomial at all alpha^j.
std::optional<FlipPattern> find_flip_pattern_chien(const ParityCheck& pc, const SyndromePair& s,
                                                   FlipSearchStats* stats = nullptr);

/// Toggles the listed bits.
Bits apply_flips(std::span<const std::uint8_t> bits, const FlipPattern& pattern);

}  // namespace dctbch
