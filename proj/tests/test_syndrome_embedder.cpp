#include <catch_amalgamated.hpp>

#include <random>

#include "dctbch/syndrome_embedder.hpp"
#include "oracles.hpp"

using namespace dctbch;

namespace {

Bits random_bits(std::mt19937_64& rng, int n) {
  Bits b(static_cast<std::size_t>(n));
  for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1U);
  return b;
}

}  // namespace

TEST_CASE("parity-check matrix", "[embedder]") {
  const ParityCheck pc{GaloisField(4)};
  const GaloisField& f = pc.field();
  REQUIRE(pc.matrix().cols() == 15);
  CHECK(pc.matrix()(0, 0) == 1);
  CHECK(pc.matrix()(1, 0) == 1);
  for (int j = 0; j < 15; ++j) {
    CHECK(pc.matrix()(0, j) == f.alpha_pow(j));
    CHECK(pc.matrix()(1, j) == f.alpha_pow(3 * j));
  }
  const ParityCheck pc5{GaloisField(5)};
  REQUIRE(pc5.matrix().cols() == 31);
  CHECK(pc5.matrix()(1, 11) == pc5.field().alpha_pow(33 % 31));
  CHECK(ParityCheck::rows() == std::array<int, 2>{1, 3});
}

TEST_CASE("extract_syndrome examples", "[embedder]") {
  const ParityCheck pc{GaloisField(4)};
  const GaloisField& f = pc.field();
  Bits bits(15, 0);
  CHECK(extract_syndrome(pc, bits).is_zero());
  bits[7] = 1;
  CHECK(extract_syndrome(pc, bits) == SyndromePair{f.alpha_pow(7), f.alpha_pow(21)});
  Bits two(15, 0);
  two[0] = two[1] = 1;
  CHECK(extract_syndrome(pc, two) == SyndromePair{f.alpha_pow(4), f.alpha_pow(14)});
  CHECK_THROWS_AS(extract_syndrome(pc, Bits(14, 0)), std::invalid_argument);
}

TEST_CASE("target syndrome and linearity", "[embedder]") {
  std::mt19937_64 rng(4);
  const ParityCheck pc{GaloisField(5)};
  for (int trial = 0; trial < 200; ++trial) {
    const Bits cover = random_bits(rng, 31);
    const WatermarkChunk chunk{static_cast<Element>(rng() % 32), static_cast<Element>(rng() % 32)};
    CHECK(target_syndrome(pc, cover, extract_syndrome(pc, cover)).is_zero());
    CHECK(target_syndrome(pc, Bits(31, 0), chunk) == chunk);
  }
}

TEST_CASE("chunk bit packing", "[embedder]") {
  const Bits bits = {1, 0, 1, 1, 0, 0, 1, 0, 0, 1};
  const WatermarkChunk c = chunk_from_bits(bits, 5);
  CHECK(c.s1 == 0b01101);
  CHECK(c.s3 == 0b10010);
  Bits back;
  append_chunk_bits(c, 5, back);
  CHECK(back == bits);
  CHECK_THROWS_AS(chunk_from_bits(Bits(9, 0), 5), std::invalid_argument);
}

TEST_CASE("FlipPattern and apply_flips", "[embedder]") {
  CHECK(FlipPattern{}.empty());
  const FlipPattern p{5, 2};
  CHECK(p.weight() == 2);
  CHECK(std::vector<int>(p.positions().begin(), p.positions().end()) == std::vector<int>{2, 5});
  CHECK_THROWS_AS((FlipPattern{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS((FlipPattern{-1}), std::invalid_argument);
  CHECK_THROWS_AS((FlipPattern{1, 2, 3, 4}), std::invalid_argument);

  const Bits zero(15, 0);
  const Bits flipped = apply_flips(zero, p);
  for (int i = 0; i < 15; ++i) CHECK(flipped[static_cast<std::size_t>(i)] == ((i == 2 || i == 5) ? 1 : 0));
  CHECK(apply_flips(flipped, p) == zero);
  CHECK(apply_flips(flipped, FlipPattern{}) == flipped);
  CHECK_THROWS_AS(apply_flips(zero, FlipPattern{15}), std::out_of_range);
}

TEST_CASE("flip search examples", "[embedder]") {
  const ParityCheck pc{GaloisField(4)};
  const RootTables tables(pc.field());
  const GaloisField& f = pc.field();
  for (auto search : {0, 1}) {
    const auto find = [&](const SyndromePair& s) {
      return search == 0 ? find_flip_pattern_lut(pc, tables, s) : find_flip_pattern_chien(pc, s);
    };
    CHECK(find({0, 0}) == FlipPattern{});
    for (int j = 0; j < 15; ++j) CHECK(find({f.alpha_pow(j), f.alpha_pow(3 * j)}) == FlipPattern{j});
    CHECK(find({f.alpha_pow(4), f.alpha_pow(14)}) == FlipPattern{0, 1});
  }
}

TEST_CASE("flip search is minimal and covers every syndrome", "[embedder][oracle]") {
  for (int m : {3, 4, 5}) {
    const ParityCheck pc{GaloisField(m)};
    const RootTables tables(pc.field());
    const auto best = oracle::min_weight_table(pc.field().primitive_poly(), m);
    FlipSearchStats lut_stats, chien_stats;
    for (Element s1 = 0; s1 < pc.field().size(); ++s1) {
      for (Element s3 = 0; s3 < pc.field().size(); ++s3) {
        const SyndromePair s{s1, s3};
        const int expected = best[(static_cast<std::size_t>(s1) << m) | s3];
        REQUIRE(expected >= 0);
        const auto lut = find_flip_pattern_lut(pc, tables, s, &lut_stats);
        const auto chien = find_flip_pattern_chien(pc, s, &chien_stats);
        REQUIRE(lut.has_value());
        REQUIRE(chien.has_value());
        REQUIRE(static_cast<int>(lut->weight()) == expected);
        REQUIRE(static_cast<int>(chien->weight()) == expected);
        REQUIRE(syndrome_of(pc, *lut) == s);
        REQUIRE(syndrome_of(pc, *chien) == s);
      }
    }
    CHECK(chien_stats.probes > lut_stats.probes);
  }
}

TEST_CASE("known weight distribution over GF(32)", "[embedder]") {
  const ParityCheck pc{GaloisField(5)};
  const RootTables tables(pc.field());
  std::array<int, 4> histogram{};
  for (Element s1 = 0; s1 < 32; ++s1) {
    for (Element s3 = 0; s3 < 32; ++s3) ++histogram.at(find_flip_pattern_lut(pc, tables, {s1, s3})->weight());
  }
  CHECK(histogram == std::array<int, 4>{1, 31, 465, 527});
}

TEST_CASE("embedding any chunk into any cover", "[embedder]") {
  std::mt19937_64 rng(99);
  for (int m : {4, 5, 6}) {
    const ParityCheck pc{GaloisField(m)};
    const RootTables tables(pc.field());
    const int n = pc.n();
    for (int trial = 0; trial < 2000; ++trial) {
      const Bits cover = random_bits(rng, n);
      const WatermarkChunk chunk{static_cast<Element>(rng() % pc.field().size()),
                                 static_cast<Element>(rng() % pc.field().size())};
      const auto e = find_flip_pattern_lut(pc, tables, target_syndrome(pc, cover, chunk));
      REQUIRE(e.has_value());
      REQUIRE(e->weight() <= 3);
      REQUIRE(extract_syndrome(pc, apply_flips(cover, *e)) == chunk);
    }
  }
}
