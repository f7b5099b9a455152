#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dctbch/bch.hpp"
#include "dctbch/dct.hpp"
#include "dctbch/image.hpp"
#include "dctbch/syndrome_embedder.hpp"

namespace dctbch {

enum class FlipSearch { lut, chien };

struct EccParams {
  int n = 31;
  int k = 16;
  int t = 3;
};

/// Zigzag positions 1..31 (everything up to the eighth anti-diagonal except DC).
std::vector<int> default_band();

struct EmbeddingParams {
  /// Degree of GF(2^m) for the syndrome-embedding code; each block carries 2m bits in 2^m - 1 slots.
  int m = 5;
  /// Protection code applied to the watermark before embedding.
  EccParams ecc;
  /// Quantiser step for coefficient parity, in luminance units.
  double delta = 28.0;
  std::uint64_t key = 0;
  /// Zigzag indices eligible to carry bits; DC (0) is not allowed.
  std::vector<int> band = default_band();
  /// Keyed bit interleaving of the coded stream across blocks.
  bool interleave = true;
  /// Leave blocks whose cover already carries the chunk completely untouched
  /// instead of re-centring their slots.
  bool skip_zero_syndrome = false;
  FlipSearch search = FlipSearch::lut;
  /// Nominal watermark strength. Reported only; delta is the operative knob.
  double alpha = 0.2;

  /// Throws ConfigError.
  void validate() const;
  int slots_per_block() const { return (1 << m) - 1; }
  int bits_per_block() const { return 2 * m; }
};

/// key=value lines describing every parameter, for reports.
std::string describe(const EmbeddingParams& params);

/// Row-major tiling into full 8x8 blocks; partial blocks on the right and bottom are excluded.
struct BlockLayout {
  int blocks_x = 0;
  int blocks_y = 0;
  int excluded_cols = 0;
  int excluded_rows = 0;

  std::size_t count() const { return static_cast<std::size_t>(blocks_x) * static_cast<std::size_t>(blocks_y); }
  int row_of(std::size_t block) const { return static_cast<int>(block / static_cast<std::size_t>(blocks_x)) * 8; }
  int col_of(std::size_t block) const { return static_cast<int>(block % static_cast<std::size_t>(blocks_x)) * 8; }
};

/// Throws ConfigError for images smaller than 8x8.
BlockLayout partition_blocks(const GrayImage& img);

CoeffBlock load_block(const GrayImage& img, const BlockLayout& layout, std::size_t block);
/// Rounds and clamps the inverse transform into the image.
void store_block(GrayImage& img, const BlockLayout& layout, std::size_t block, const CoeffBlock& coeffs);

/// Keyed permutation of the band for this block, truncated to 2^m - 1 row-major coefficient indices.
std::vector<int> select_slots(const EmbeddingParams& params, std::size_t block_index);

/// Keyed visiting order of the usable blocks; chunk c goes to the c-th block in this order.
std::vector<std::size_t> block_order(const EmbeddingParams& params, std::size_t usable_blocks);

/// Parity of round(c / delta) for each slot.
Bits read_bits(const CoeffBlock& block, std::span<const int> slots, double delta);

/// Moves each flipped slot to the nearest cell centre of opposite parity (ties toward zero)
/// and re-centres every other slot on its own cell.
CoeffBlock write_bits(const CoeffBlock& block, std::span<const int> slots, const FlipPattern& flips, double delta);

/// ECC-encodes a payload: k-bit messages (last one zero-padded) to n-bit codewords, concatenated.
Bits ecc_encode_stream(const BchCode& code, std::span<const std::uint8_t> payload);
/// Coded length for a payload, ceil(payload / k) * n.
std::size_t coded_length(const EccParams& ecc, std::size_t payload_bits);
/// Largest payload the image can carry with these parameters.
std::size_t max_payload_bits(const EmbeddingParams& params, const GrayImage& cover);

struct EmbedReport {
  std::size_t payload_bits = 0;
  std::size_t coded_bits = 0;
  std::size_t capacity_bits = 0;
  std::size_t usable_blocks = 0;
  std::size_t blocks_used = 0;
  /// Count of blocks by flip-pattern weight 0..3.
  std::array<std::size_t, 4> flips_histogram{};
  /// Blocks left untouched because the cover already carried the chunk (skip_zero_syndrome).
  std::size_t skipped_blocks = 0;
  /// Blocks with no pattern of weight <= 3; their chunk moves to the next block.
  std::size_t unembeddable_blocks = 0;
  /// Blocks whose parities could not be settled after pixel rounding and clamping.
  std::size_t unsettled_blocks = 0;
  std::optional<double> psnr_db;
};

struct EmbedResult {
  GrayImage stego;
  EmbedReport report;
};

/// Throws CapacityError when the coded payload exceeds 2m bits per usable block.
EmbedResult embed_image(const GrayImage& cover, std::span<const std::uint8_t> watermark, const EmbeddingParams& params);

struct ExtractReport {
  std::size_t codewords = 0;
  std::size_t ecc_corrections = 0;
  std::size_t decode_failures = 0;
  std::size_t blocks_read = 0;
};

struct ExtractResult {
  Bits watermark;
  ExtractReport report;
};

/// Blind extraction of payload_bits bits. Decode failures are counted and
/// contribute their uncorrected message bits.
ExtractResult extract_image(const GrayImage& stego, const EmbeddingParams& params, std::size_t payload_bits);

std::string to_key_value(const EmbedReport& report);
std::string to_key_value(const ExtractReport& report);

}  // namespace dctbch
