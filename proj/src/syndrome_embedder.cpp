#include "dctbch/syndrome_embedder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dctbch {

WatermarkChunk chunk_from_bits(std::span<const std::uint8_t> bits, int m) {
  if (bits.size() != 2 * static_cast<std::size_t>(m)) {
    throw std::invalid_argument("chunk_from_bits: expected " + std::to_string(2 * m) + " bits");
  }
  WatermarkChunk chunk;
  for (int i = 0; i < m; ++i) {
    chunk.s1 |= static_cast<Element>((bits[static_cast<std::size_t>(i)] & 1U) << i);
    chunk.s3 |= static_cast<Element>((bits[static_cast<std::size_t>(m + i)] & 1U) << i);
  }
  return chunk;
}

void append_chunk_bits(const WatermarkChunk& chunk, int m, Bits& out) {
  for (int i = 0; i < m; ++i) out.push_back(static_cast<std::uint8_t>((chunk.s1 >> i) & 1U));
  for (int i = 0; i < m; ++i) out.push_back(static_cast<std::uint8_t>((chunk.s3 >> i) & 1U));
}

FlipPattern::FlipPattern(std::initializer_list<int> positions) {
  if (positions.size() > kMaxWeight) throw std::invalid_argument("FlipPattern: more than three positions");
  for (int p : positions) {
    if (p < 0) throw std::invalid_argument("FlipPattern: negative position");
    pos_[size_++] = p;
  }
  std::sort(pos_.begin(), pos_.begin() + size_);
  if (std::adjacent_find(pos_.begin(), pos_.begin() + size_) != pos_.begin() + size_) {
    throw std::invalid_argument("FlipPattern: duplicate position");
  }
}

ParityCheck::ParityCheck(GaloisField field) : field_(std::move(field)), h_(2, field_.order()) {
  for (int j = 0; j < field_.order(); ++j) {
    h_(0, j) = field_.alpha_pow(static_cast<long long>(rows()[0]) * j);
    h_(1, j) = field_.alpha_pow(static_cast<long long>(rows()[1]) * j);
  }
}

SyndromePair extract_syndrome(const ParityCheck& pc, std::span<const std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != pc.n()) {
    throw std::invalid_argument("extract_syndrome: expected " + std::to_string(pc.n()) + " bits");
  }
  SyndromePair s;
  const auto& h = pc.matrix();
  for (int j = 0; j < pc.n(); ++j) {
    if (bits[static_cast<std::size_t>(j)] & 1U) {
      s.s1 ^= h(0, j);
      s.s3 ^= h(1, j);
    }
  }
  return s;
}

SyndromePair syndrome_of(const ParityCheck& pc, const FlipPattern& pattern) {
  SyndromePair s;
  const auto& h = pc.matrix();
  for (int j : pattern.positions()) {
    if (j >= pc.n()) throw std::out_of_range("syndrome_of: position outside the block");
    s.s1 ^= h(0, j);
    s.s3 ^= h(1, j);
  }
  return s;
}

SyndromePair target_syndrome(const ParityCheck& pc, std::span<const std::uint8_t> cover,
                             const WatermarkChunk& chunk) {
  const SyndromePair v = extract_syndrome(pc, cover);
  return {static_cast<Element>(chunk.s1 ^ v.s1), static_cast<Element>(chunk.s3 ^ v.s3)};
}

namespace {

Element cube(const GaloisField& f, Element x) { return f.mul(f.mul(x, x), x); }

FlipPattern checked(const ParityCheck& pc, const SyndromePair& s, FlipPattern pattern) {
  if (!(syndrome_of(pc, pattern) == s)) {
    throw std::logic_error("flip search produced a pattern that does not realise the target syndrome");
  }
  return pattern;
}

void count(FlipSearchStats* stats, std::size_t n) {
  if (stats != nullptr) stats->probes += n;
}

}  // namespace

std::optional<FlipPattern> find_flip_pattern_lut(const ParityCheck& pc, const RootTables& tables,
                                                 const SyndromePair& s, FlipSearchStats* stats) {
  const GaloisField& f = pc.field();
  if (tables.m() != f.m()) throw std::invalid_argument("find_flip_pattern_lut: tables built for another field");
  if (s.is_zero()) return FlipPattern{};

  const auto position = [&f](Element beta) { return *f.log(beta); };
  // b = S3 + S1^3 is the same for every locator consistent with (S1, S3).
  const Element b = s.s3 ^ cube(f, s.s1);

  if (s.s1 != 0) {
    if (b == 0) return checked(pc, s, FlipPattern{position(s.s1)});

    // sigma(x) = x^2 + S1 x + b / S1; u = sigma_2 / sigma_1^2.
    const Element u = f.div(b, cube(f, s.s1));
    count(stats, 1);
    if (const auto y0 = tables.quadratic_root(u)) {
      const Element beta1 = f.mul(s.s1, *y0);
      const Element beta2 = beta1 ^ s.s1;
      return checked(pc, s, FlipPattern{position(beta1), position(beta2)});
    }
  }

  // Weight 3: sigma(x) = x^3 + S1 x^2 + e2 x + (b + e2 S1) for a free e2.
  // With rho = sqrt(S1^2 + e2), the roots are rho y + S1 where y^3 + y + o = 0 and
  // rho^3 = b / o, so each three-root row o fixes rho up to a cube root.
  for (Element o : tables.three_root_indices()) {
    count(stats, 1);
    const auto row = *tables.cubic_roots(o);
    for (Element rho : f.cbrt(f.div(b, o))) {
      const Element beta1 = f.mul(rho, row[0]) ^ s.s1;
      const Element beta2 = f.mul(rho, row[1]) ^ s.s1;
      const Element beta3 = f.mul(rho, row[2]) ^ s.s1;
      if (beta1 != 0 && beta2 != 0 && beta3 != 0) {
        return checked(pc, s, FlipPattern{position(beta1), position(beta2), position(beta3)});
      }
    }
  }
  // e2 = S1^2 leaves (x + S1)^3 = b, solvable with three roots only when 3 | 2^m - 1.
  const auto z = f.cbrt(b);
  count(stats, 1);
  if (z.size() == 3) {
    const Element beta1 = z[0] ^ s.s1;
    const Element beta2 = z[1] ^ s.s1;
    const Element beta3 = z[2] ^ s.s1;
    if (beta1 != 0 && beta2 != 0 && beta3 != 0) {
      return checked(pc, s, FlipPattern{position(beta1), position(beta2), position(beta3)});
    }
  }
  return std::nullopt;
}

namespace {

/// Positions j in [0, n) with sigma(alpha^j) = 0.
std::vector<int> chien_roots(const GaloisField& f, std::span<const Element> sigma, FlipSearchStats* stats) {
  std::vector<int> roots;
  for (int j = 0; j < f.order(); ++j) {
    if (f.eval(sigma, f.antilog()[static_cast<std::size_t>(j)]) == 0) roots.push_back(j);
  }
  count(stats, static_cast<std::size_t>(f.order()));
  return roots;
}

}  // namespace

std::optional<FlipPattern> find_flip_pattern_chien(const ParityCheck& pc, const SyndromePair& s,
                                                   FlipSearchStats* stats) {
  const GaloisField& f = pc.field();
  if (s.is_zero()) return FlipPattern{};
  const Element b = s.s3 ^ cube(f, s.s1);

  if (s.s1 != 0) {
    if (b == 0) {
      const Element sigma[] = {s.s1, 1};
      const auto r = chien_roots(f, sigma, stats);
      if (r.size() == 1) return checked(pc, s, FlipPattern{r[0]});
    } else {
      const Element sigma[] = {f.div(b, s.s1), s.s1, 1};
      const auto r = chien_roots(f, sigma, stats);
      if (r.size() == 2) return checked(pc, s, FlipPattern{r[0], r[1]});
    }
  }

  for (int e2v = 0; e2v < f.size(); ++e2v) {
    const auto e2 = static_cast<Element>(e2v);
    const Element sigma[] = {static_cast<Element>(b ^ f.mul(e2, s.s1)), e2, s.s1, 1};
    const auto r = chien_roots(f, sigma, stats);
    if (r.size() == 3) return checked(pc, s, FlipPattern{r[0], r[1], r[2]});
  }
  return std::nullopt;
}

Bits apply_flips(std::span<const std::uint8_t> bits, const FlipPattern& pattern) {
  Bits out(bits.begin(), bits.end());
  for (int j : pattern.positions()) {
    if (static_cast<std::size_t>(j) >= out.size()) throw std::out_of_range("apply_flips: position outside the block");
    out[static_cast<std::size_t>(j)] ^= 1;
  }
  return out;
}

}  // namespace dctbch
