#include "dctbch/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dctbch/errors.hpp"
#include "dctbch/metrics.hpp"
#include "dctbch/random.hpp"
#include "dctbch/root_lut.hpp"

namespace dctbch {

namespace {

// Seed domains keep the slot, block-order and interleaver streams independent under one key.
constexpr std::uint64_t kSlotDomain = 0x736c6f7473000001ULL;
constexpr std::uint64_t kOrderDomain = 0x6f72646572000002ULL;
constexpr std::uint64_t kInterleaveDomain = 0x696c766500000003ULL;

constexpr int kMaxSettleRounds = 8;

std::uint64_t derive_seed(std::uint64_t key, std::uint64_t domain, std::uint64_t index) {
  return splitmix64(splitmix64(key ^ domain) ^ index);
}

long long cell(double c, double delta) { return std::llround(c / delta); }

}  // namespace

std::vector<int> default_band() {
  std::vector<int> band(31);
  std::iota(band.begin(), band.end(), 1);
  return band;
}

void EmbeddingParams::validate() const {
  if (m < 3 || m > 6) throw ConfigError("embedding field degree m must be in [3, 6], got " + std::to_string(m));
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be a positive number");
  std::vector<int> sorted = band;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ConfigError("band has duplicate entries");
  for (int z : band) {
    if (z <= 0 || z > 63) throw ConfigError("band entries must be zigzag indices in [1, 63]");
  }
  if (static_cast<int>(band.size()) < slots_per_block()) {
    throw ConfigError("band has " + std::to_string(band.size()) + " coefficients but m = " + std::to_string(m) +
                      " needs " + std::to_string(slots_per_block()));
  }
  try {
    (void)BchCode::from_parameters(ecc.n, ecc.k, ecc.t);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ECC: ") + e.what());
  }
}

std::string describe(const EmbeddingParams& params) {
  std::ostringstream out;
  out << "m=" << params.m << '\n'
      << "ecc=" << params.ecc.n << ',' << params.ecc.k << ',' << params.ecc.t << '\n'
      << "delta=" << params.delta << '\n'
      << "key=" << params.key << '\n'
      << "band=";
  for (std::size_t i = 0; i < params.band.size(); ++i) out << (i ? "," : "") << params.band[i];
  out << '\n'
      << "interleave=" << (params.interleave ? 1 : 0) << '\n'
      << "skip_zero_syndrome=" << (params.skip_zero_syndrome ? 1 : 0) << '\n'
      << "search=" << (params.search == FlipSearch::lut ? "lut" : "chien") << '\n'
      << "alpha=" << params.alpha << '\n';
  return out.str();
}

BlockLayout partition_blocks(const GrayImage& img) {
  if (img.width() < 8 || img.height() < 8) throw ConfigError("image is smaller than one 8x8 block");
  BlockLayout layout;
  layout.blocks_x = img.width() / 8;
  layout.blocks_y = img.height() / 8;
  layout.excluded_cols = img.width() % 8;
  layout.excluded_rows = img.height() % 8;
  return layout;
}

CoeffBlock load_block(const GrayImage& img, const BlockLayout& layout, std::size_t block) {
  const Block8<double> px = img.pixels.block<8, 8>(layout.row_of(block), layout.col_of(block)).cast<double>();
  return dct2_block(px);
}

void store_block(GrayImage& img, const BlockLayout& layout, std::size_t block, const CoeffBlock& coeffs) {
  const Block8<double> px = idct2_block(coeffs).array().round().max(0.0).min(255.0).matrix();
  img.pixels.block<8, 8>(layout.row_of(block), layout.col_of(block)) = px.cast<std::uint8_t>();
}

std::vector<int> select_slots(const EmbeddingParams& params, std::size_t block_index) {
  if (static_cast<int>(params.band.size()) < params.slots_per_block()) throw ConfigError("band too small for m");
  const auto perm = keyed_permutation(params.band.size(), derive_seed(params.key, kSlotDomain, block_index));
  std::vector<int> slots;
  slots.reserve(static_cast<std::size_t>(params.slots_per_block()));
  for (int i = 0; i < params.slots_per_block(); ++i) {
    const int zz = params.band[perm[static_cast<std::size_t>(i)]];
    slots.push_back(kZigzagOrder.at(static_cast<std::size_t>(zz)));
  }
  return slots;
}

std::vector<std::size_t> block_order(const EmbeddingParams& params, std::size_t usable_blocks) {
  return keyed_permutation(usable_blocks, derive_seed(params.key, kOrderDomain, usable_blocks));
}

Bits read_bits(const CoeffBlock& block, std::span<const int> slots, double delta) {
  Bits bits;
  bits.reserve(slots.size());
  for (int s : slots) bits.push_back(static_cast<std::uint8_t>(cell(block(s / 8, s % 8), delta) & 1LL));
  return bits;
}

CoeffBlock write_bits(const CoeffBlock& block, std::span<const int> slots, const FlipPattern& flips, double delta) {
  CoeffBlock out = block;
  std::vector<bool> flip(slots.size(), false);
  for (int p : flips.positions()) flip.at(static_cast<std::size_t>(p)) = true;

  for (std::size_t i = 0; i < slots.size(); ++i) {
    double& c = out(slots[i] / 8, slots[i] % 8);
    const long long q = cell(c, delta);
    if (!flip[i]) {
      c = static_cast<double>(q) * delta;
      continue;
    }
    const double down = static_cast<double>(q - 1) * delta;
    const double up = static_cast<double>(q + 1) * delta;
    const double d_down = std::abs(c - down);
    const double d_up = std::abs(c - up);
    if (d_down < d_up) {
      c = down;
    } else if (d_up < d_down) {
      c = up;
    } else {
      c = std::abs(down) <= std::abs(up) ? down : up;
    }
  }
  return out;
}

std::size_t coded_length(const EccParams& ecc, std::size_t payload_bits) {
  const auto k = static_cast<std::size_t>(ecc.k);
  return (payload_bits + k - 1) / k * static_cast<std::size_t>(ecc.n);
}

Bits ecc_encode_stream(const BchCode& code, std::span<const std::uint8_t> payload) {
  const auto k = static_cast<std::size_t>(code.k());
  Bits coded;
  coded.reserve((payload.size() + k - 1) / k * static_cast<std::size_t>(code.n()));
  for (std::size_t off = 0; off < payload.size(); off += k) {
    Bits message(k, 0);
    std::copy_n(payload.begin() + static_cast<std::ptrdiff_t>(off), std::min(k, payload.size() - off), message.begin());
    const Bits word = code.encode(message);
    coded.insert(coded.end(), word.begin(), word.end());
  }
  return coded;
}

std::size_t max_payload_bits(const EmbeddingParams& params, const GrayImage& cover) {
  const std::size_t raw = partition_blocks(cover).count() * static_cast<std::size_t>(params.bits_per_block());
  return raw / static_cast<std::size_t>(params.ecc.n) * static_cast<std::size_t>(params.ecc.k);
}

namespace {

struct Embedder {
  const EmbeddingParams& params;
  ParityCheck pc;
  RootTables tables;

  explicit Embedder(const EmbeddingParams& p) : params(p), pc(GaloisField(p.m)), tables(pc.field()) {}

  std::optional<FlipPattern> search(const SyndromePair& s) const {
    return params.search == FlipSearch::lut ? find_flip_pattern_lut(pc, tables, s) : find_flip_pattern_chien(pc, s);
  }
};

Bits interleave(const Bits& coded, const EmbeddingParams& params) {
  if (!params.interleave) return coded;
  const auto perm = keyed_permutation(coded.size(), derive_seed(params.key, kInterleaveDomain, coded.size()));
  Bits out(coded.size());
  for (std::size_t i = 0; i < coded.size(); ++i) out[i] = coded[perm[i]];
  return out;
}

Bits deinterleave(const Bits& stream, const EmbeddingParams& params) {
  if (!params.interleave) return stream;
  const auto perm = keyed_permutation(stream.size(), derive_seed(params.key, kInterleaveDomain, stream.size()));
  Bits out(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) out[perm[i]] = stream[i];
  return out;
}

enum class BlockOutcome { embedded, skipped, unembeddable };

struct BlockResult {
  BlockOutcome outcome = BlockOutcome::embedded;
  std::size_t weight = 0;
  bool settled = true;
};

BlockResult embed_block(const Embedder& e, GrayImage& img, const BlockLayout& layout, std::size_t block,
                        const WatermarkChunk& chunk) {
  const auto slots = select_slots(e.params, block);
  const CoeffBlock coeffs = load_block(img, layout, block);
  const Bits cover = read_bits(coeffs, slots, e.params.delta);
  const SyndromePair s = target_syndrome(e.pc, cover, chunk);

  BlockResult result;
  if (s.is_zero() && e.params.skip_zero_syndrome) {
    result.outcome = BlockOutcome::skipped;
    return result;
  }
  const auto pattern = e.search(s);
  if (!pattern) {
    result.outcome = BlockOutcome::unembeddable;
    return result;
  }
  result.weight = pattern->weight();
  store_block(img, layout, block, write_bits(coeffs, slots, *pattern, e.params.delta));

  // Rounding and clamping in the pixel domain can push a slot across a cell
  // boundary; re-embed from the rounded block until the chunk reads back.
  for (int round = 0; round < kMaxSettleRounds; ++round) {
    const CoeffBlock now = load_block(img, layout, block);
    const Bits bits = read_bits(now, slots, e.params.delta);
    const SyndromePair residual = target_syndrome(e.pc, bits, chunk);
    if (residual.is_zero()) return result;
    const auto fix = e.search(residual);
    if (!fix) break;
    store_block(img, layout, block, write_bits(now, slots, *fix, e.params.delta));
  }
  const Bits final_bits = read_bits(load_block(img, layout, block), slots, e.params.delta);
  result.settled = extract_syndrome(e.pc, final_bits) == chunk;
  return result;
}

}  // namespace

EmbedResult embed_image(const GrayImage& cover, std::span<const std::uint8_t> watermark, const EmbeddingParams& params) {
  params.validate();
  const BchCode ecc = BchCode::from_parameters(params.ecc.n, params.ecc.k, params.ecc.t);
  const BlockLayout layout = partition_blocks(cover);
  const auto per_block = static_cast<std::size_t>(params.bits_per_block());

  EmbedReport report;
  report.payload_bits = watermark.size();
  report.coded_bits = coded_length(params.ecc, watermark.size());
  report.usable_blocks = layout.count();
  report.capacity_bits = layout.count() * per_block;
  if (report.coded_bits > report.capacity_bits) {
    const std::size_t max_bits = max_payload_bits(params, cover);
    throw CapacityError("watermark of " + std::to_string(watermark.size()) + " bits needs " +
                            std::to_string(report.coded_bits) + " coded bits but the cover holds " +
                            std::to_string(report.capacity_bits) + "; maximum payload is " +
                            std::to_string(max_bits) + " bits",
                        max_bits);
  }

  Bits stream = interleave(ecc_encode_stream(ecc, watermark), params);
  stream.resize((stream.size() + per_block - 1) / per_block * per_block, 0);

  const Embedder embedder(params);
  const auto order = block_order(params, layout.count());
  GrayImage stego = cover;

  std::size_t next_block = 0;
  for (std::size_t off = 0; off < stream.size(); off += per_block) {
    const WatermarkChunk chunk =
        chunk_from_bits(std::span<const std::uint8_t>(stream).subspan(off, per_block), params.m);
    for (;;) {
      if (next_block >= order.size()) {
        throw CapacityError("ran out of blocks after unembeddable blocks", max_payload_bits(params, cover));
      }
      const BlockResult r = embed_block(embedder, stego, layout, order[next_block++], chunk);
      ++report.blocks_used;
      if (r.outcome == BlockOutcome::unembeddable) {
        ++report.unembeddable_blocks;
        continue;
      }
      if (r.outcome == BlockOutcome::skipped) ++report.skipped_blocks;
      ++report.flips_histogram.at(r.weight);
      if (!r.settled) ++report.unsettled_blocks;
      break;
    }
  }

  report.psnr_db = psnr(cover, stego);
  return {std::move(stego), report};
}

ExtractResult extract_image(const GrayImage& stego, const EmbeddingParams& params, std::size_t payload_bits) {
  params.validate();
  const BchCode ecc = BchCode::from_parameters(params.ecc.n, params.ecc.k, params.ecc.t);
  const BlockLayout layout = partition_blocks(stego);
  const auto per_block = static_cast<std::size_t>(params.bits_per_block());
  const std::size_t coded = coded_length(params.ecc, payload_bits);
  const std::size_t chunks = (coded + per_block - 1) / per_block;
  if (chunks > layout.count()) {
    throw CapacityError("requested payload exceeds the capacity of the image", max_payload_bits(params, stego));
  }

  const ParityCheck pc{GaloisField(params.m)};
  const auto order = block_order(params, layout.count());
  ExtractResult result;

  Bits stream;
  stream.reserve(chunks * per_block);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t block = order[c];
    const Bits bits = read_bits(load_block(stego, layout, block), select_slots(params, block), params.delta);
    append_chunk_bits(extract_syndrome(pc, bits), params.m, stream);
  }
  result.report.blocks_read = chunks;
  stream.resize(coded);
  const Bits words = deinterleave(stream, params);

  const auto n = static_cast<std::size_t>(ecc.n());
  for (std::size_t off = 0; off < words.size(); off += n) {
    const DecodeResult d = ecc.decode(std::span<const std::uint8_t>(words).subspan(off, n));
    ++result.report.codewords;
    if (d.ok) {
      result.report.ecc_corrections += static_cast<std::size_t>(d.corrected);
    } else {
      ++result.report.decode_failures;
    }
    result.watermark.insert(result.watermark.end(), d.message.begin(), d.message.end());
  }
  result.watermark.resize(payload_bits);
  return result;
}

std::string to_key_value(const EmbedReport& report) {
  std::ostringstream out;
  out << "payload_bits=" << report.payload_bits << '\n'
      << "coded_bits=" << report.coded_bits << '\n'
      << "capacity_bits=" << report.capacity_bits << '\n'
      << "usable_blocks=" << report.usable_blocks << '\n'
      << "blocks_used=" << report.blocks_used << '\n'
      << "flips_histogram=" << report.flips_histogram[0] << ',' << report.flips_histogram[1] << ','
      << report.flips_histogram[2] << ',' << report.flips_histogram[3] << '\n'
      << "skipped_blocks=" << report.skipped_blocks << '\n'
      << "unembeddable_blocks=" << report.unembeddable_blocks << '\n'
      << "unsettled_blocks=" << report.unsettled_blocks << '\n'
      << "psnr_db=" << format_db(report.psnr_db) << '\n';
  return out.str();
}

std::string to_key_value(const ExtractReport& report) {
  std::ostringstream out;
  out << "blocks_read=" << report.blocks_read << '\n'
      << "codewords=" << report.codewords << '\n'
      << "ecc_corrections=" << report.ecc_corrections << '\n'
      << "decode_failures=" << report.decode_failures << '\n';
  return out.str();
}

}  // namespace dctbch
