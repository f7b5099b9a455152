#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "dctbch/errors.hpp"
#include "dctbch/metrics.hpp"
#include "dctbch/pipeline.hpp"
#include "dctbch/random.hpp"
#include "dctbch/synthetic.hpp"

using namespace dctbch;

namespace {

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1U);
  return b;
}

std::size_t errors(const Bits& a, const Bits& b) {
  std::size_t e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
  return e;
}

/// Re-embeds block `block` so that it carries `chunk` instead of what it holds now.
void force_chunk(GrayImage& img, const EmbeddingParams& params, std::size_t block, const WatermarkChunk& chunk) {
  const BlockLayout layout = partition_blocks(img);
  const ParityCheck pc{GaloisField(params.m)};
  const RootTables tables(pc.field());
  const auto slots = select_slots(params, block);
  const CoeffBlock coeffs = load_block(img, layout, block);
  const auto e = find_flip_pattern_lut(pc, tables, target_syndrome(pc, read_bits(coeffs, slots, params.delta), chunk));
  REQUIRE(e.has_value());
  store_block(img, layout, block, write_bits(coeffs, slots, *e, params.delta));
  REQUIRE(extract_syndrome(pc, read_bits(load_block(img, layout, block), slots, params.delta)) == chunk);
}

}  // namespace

TEST_CASE("DCT of constant blocks", "[dct]") {
  const Block8<double> mid = Block8<double>::Constant(128.0);
  CHECK(dct2_block(mid).cwiseAbs().maxCoeff() < 1e-12);
  const CoeffBlock c = dct2_block(Block8<double>::Constant(136.0));
  CHECK(c(0, 0) == Catch::Approx(64.0).margin(1e-12));
  CoeffBlock ac = c;
  ac(0, 0) = 0.0;
  CHECK(ac.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("DCT round trip and orthonormality", "[dct]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  for (int trial = 0; trial < 100; ++trial) {
    Block8<double> px;
    for (int i = 0; i < 64; ++i) px(i / 8, i % 8) = u(rng);
    const CoeffBlock c = dct2_block(px);
    CHECK((idct2_block(c) - px).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((px.array() - 128.0).square().sum() == Catch::Approx(c.array().square().sum()).epsilon(1e-12));
  }
  CHECK((dct_basis<double>() * dct_basis<double>().transpose() - Block8<double>::Identity()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("zigzag order", "[dct]") {
  std::set<int> seen(kZigzagOrder.begin(), kZigzagOrder.end());
  CHECK(seen.size() == 64);
  CHECK(kZigzagOrder[0] == 0);
  CHECK(kZigzagOrder[1] == 1);
  CHECK(kZigzagOrder[2] == 8);
  CHECK(kZigzagOrder[3] == 16);
  CHECK(kZigzagOrder[63] == 63);
  for (std::size_t i = 1; i < 64; ++i) {
    const int a = kZigzagOrder[i - 1];
    const int b = kZigzagOrder[i];
    CHECK(b / 8 + b % 8 >= a / 8 + a % 8);
  }
}

TEST_CASE("block partition", "[pipeline]") {
  CHECK(partition_blocks(GrayImage(512, 512)).count() == 4096);
  CHECK(partition_blocks(GrayImage(16, 8)).count() == 2);
  const BlockLayout odd = partition_blocks(GrayImage(12, 12));
  CHECK(odd.count() == 1);
  CHECK(odd.excluded_cols == 4);
  CHECK(odd.excluded_rows == 4);
  const BlockLayout wide = partition_blocks(GrayImage(24, 16));
  CHECK(wide.row_of(4) == 8);
  CHECK(wide.col_of(4) == 8);
  CHECK_THROWS_AS(partition_blocks(GrayImage(7, 64)), ConfigError);
}

TEST_CASE("parameter validation", "[pipeline]") {
  EmbeddingParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.slots_per_block() == 31);
  CHECK(p.bits_per_block() == 10);
  auto bad = p;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.m = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.band = {0, 1, 2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.band.pop_back();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.ecc = {31, 17, 3};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.band.push_back(1);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.m = 4;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("slot selection", "[pipeline]") {
  EmbeddingParams a;
  a.key = 1;
  EmbeddingParams b = a;
  b.key = 2;
  std::set<int> band_positions;
  for (int z : a.band) band_positions.insert(kZigzagOrder[static_cast<std::size_t>(z)]);
  bool differs = false;
  for (std::size_t block = 0; block < 4096; ++block) {
    const auto s = select_slots(a, block);
    REQUIRE(s.size() == 31);
    REQUIRE(s == select_slots(a, block));
    REQUIRE(std::set<int>(s.begin(), s.end()).size() == 31);
    for (int pos : s) {
      REQUIRE(pos != 0);
      REQUIRE(band_positions.count(pos) == 1);
    }
    differs = differs || s != select_slots(b, block);
  }
  CHECK(differs);
  CHECK(block_order(a, 100) == block_order(a, 100));
  CHECK(block_order(a, 100) != block_order(b, 100));
}

TEST_CASE("bit read and write", "[pipeline]") {
  const double delta = 12.0;
  const std::vector<int> slots = {1, 8, 9};
  CoeffBlock block = CoeffBlock::Zero();
  CHECK(read_bits(block, slots, delta) == Bits{0, 0, 0});
  block(0, 1) = 3 * delta;
  block(1, 0) = -3 * delta;
  CHECK(read_bits(block, slots, delta) == Bits{1, 1, 0});

  block(1, 1) = 2.4 * delta;
  CoeffBlock out = write_bits(block, slots, FlipPattern{2}, delta);
  CHECK(out(1, 1) == Catch::Approx(3 * delta));

  // Exactly on a centre: both neighbours are equally near, ties go toward zero.
  out = write_bits(block, slots, FlipPattern{0, 1}, delta);
  CHECK(out(0, 1) == Catch::Approx(2 * delta));
  CHECK(out(1, 0) == Catch::Approx(-2 * delta));

  block(1, 1) = 2.3 * delta;
  out = write_bits(block, slots, FlipPattern{}, delta);
  CHECK(out(1, 1) == Catch::Approx(2 * delta));
  CHECK(out(0, 0) == block(0, 0));

  std::mt19937_64 rng(6);
  std::normal_distribution<double> coeff(0.0, 60.0);
  EmbeddingParams params;
  for (int trial = 0; trial < 2000; ++trial) {
    CoeffBlock c;
    for (int i = 0; i < 64; ++i) c(i / 8, i % 8) = coeff(rng);
    const auto s = select_slots(params, static_cast<std::size_t>(trial));
    const Bits before = read_bits(c, s, delta);
    const std::vector<int> picks = {static_cast<int>(rng() % 31), static_cast<int>(rng() % 31)};
    const FlipPattern e = picks[0] == picks[1] ? FlipPattern{picks[0]} : FlipPattern{picks[0], picks[1]};
    const CoeffBlock w = write_bits(c, s, e, delta);
    REQUIRE(read_bits(w, s, delta) == apply_flips(before, e));
    int moved_far = 0;
    for (int i = 0; i < 64; ++i) {
      const double change = std::abs(w(i / 8, i % 8) - c(i / 8, i % 8));
      REQUIRE(change <= 1.5 * delta + 1e-9);
      moved_far += change > delta / 2 + 1e-9;
    }
    REQUIRE(moved_far <= static_cast<int>(e.weight()));
  }
}

TEST_CASE("ECC stream helpers", "[pipeline]") {
  const BchCode code = BchCode::from_parameters(31, 16, 3);
  CHECK(coded_length({31, 16, 3}, 0) == 0);
  CHECK(coded_length({31, 16, 3}, 16) == 31);
  CHECK(coded_length({31, 16, 3}, 17) == 62);
  const Bits payload(20, 1);
  const Bits coded = ecc_encode_stream(code, payload);
  REQUIRE(coded.size() == 62);
  Bits second_message(16, 0);
  std::fill_n(second_message.begin(), 4, 1);
  CHECK(Bits(coded.begin() + 31, coded.end()) == code.encode(second_message));
  CHECK(max_payload_bits(EmbeddingParams{}, GrayImage(512, 512)) == 40960 / 31 * 16);
}

TEST_CASE("blind round trip at defaults", "[pipeline]") {
  std::mt19937_64 rng(2);
  const Bits mark = random_bits(rng, 4096);
  const GrayImage cover = synthetic_image(512, 512, 17);
  EmbeddingParams params;
  params.key = 1234;
  const EmbedResult e = embed_image(cover, mark, params);
  CHECK(e.report.payload_bits == 4096);
  CHECK(e.report.coded_bits == 7936);
  CHECK(e.report.blocks_used == 794);
  CHECK(e.report.unembeddable_blocks == 0);
  CHECK(e.report.unsettled_blocks == 0);
  std::size_t histogram_total = 0;
  for (auto h : e.report.flips_histogram) histogram_total += h;
  CHECK(histogram_total == e.report.blocks_used);
  REQUIRE(e.report.psnr_db.has_value());
  CHECK(*e.report.psnr_db >= 38.0);

  const ExtractResult x = extract_image(e.stego, params, mark.size());
  CHECK(x.watermark == mark);
  CHECK(x.report.ecc_corrections == 0);
  CHECK(x.report.decode_failures == 0);
  CHECK(x.report.codewords == 256);
  CHECK(embed_image(cover, mark, params).stego == e.stego);
}

TEST_CASE("round trip across fields and protection codes", "[pipeline]") {
  std::mt19937_64 rng(3);
  const GrayImage cover = synthetic_image(160, 120, 5);
  const EccParams codes[] = {{15, 11, 1}, {15, 7, 2}, {15, 5, 3}, {31, 26, 1}, {31, 21, 2}, {31, 16, 3}};
  for (int m : {4, 5}) {
    for (const auto& ecc : codes) {
      for (bool interleave : {true, false}) {
        EmbeddingParams params;
        params.m = m;
        params.ecc = ecc;
        params.interleave = interleave;
        params.key = rng();
        const std::size_t max_bits = max_payload_bits(params, cover);
        const Bits mark = random_bits(rng, max_bits * 4 / 5);
        const EmbedResult e = embed_image(cover, mark, params);
        CAPTURE(m, ecc.n, ecc.k, ecc.t, interleave);
        REQUIRE(extract_image(e.stego, params, mark.size()).watermark == mark);
      }
    }
  }
}

TEST_CASE("round trip on covers that clip", "[pipeline]") {
  std::mt19937_64 rng(9);
  GrayImage cover(128, 128);
  for (int r = 0; r < 128; ++r) {
    for (int c = 0; c < 128; ++c) {
      const bool bright = ((r / 8) + (c / 8)) % 2 == 0;
      const bool ramp = r >= 64;
      cover.pixels(r, c) = static_cast<std::uint8_t>(ramp ? (bright ? 250 : 4) : (bright ? 255 : 0));
    }
  }
  EmbeddingParams params;
  const Bits mark = random_bits(rng, max_payload_bits(params, cover) * 4 / 5);
  const EmbedResult e = embed_image(cover, mark, params);
  const ExtractResult x = extract_image(e.stego, params, mark.size());
  CHECK(x.watermark == mark);
}

TEST_CASE("empty watermark leaves the cover untouched", "[pipeline]") {
  const GrayImage cover = synthetic_image(64, 64, 1);
  const EmbedResult e = embed_image(cover, Bits{}, EmbeddingParams{});
  CHECK(e.stego == cover);
  CHECK_FALSE(e.report.psnr_db.has_value());
  CHECK(e.report.blocks_used == 0);
  CHECK(extract_image(e.stego, EmbeddingParams{}, 0).watermark.empty());
}

TEST_CASE("capacity check", "[pipeline]") {
  const GrayImage cover = synthetic_image(64, 64, 1);
  EmbeddingParams params;
  const std::size_t max_bits = max_payload_bits(params, cover);
  CHECK(max_bits == 640 / 31 * 16);
  CHECK_NOTHROW(embed_image(cover, Bits(max_bits, 1), params));
  try {
    embed_image(cover, Bits(max_bits + 1, 1), params);
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.max_payload_bits() == max_bits);
  }
  CHECK_THROWS_AS(extract_image(cover, params, max_bits * 4), CapacityError);
}

TEST_CASE("extraction corrects injected chunk errors", "[pipeline]") {
  std::mt19937_64 rng(10);
  const GrayImage cover = synthetic_image(256, 256, 8);
  EmbeddingParams params;
  params.interleave = false;
  const Bits mark = random_bits(rng, 160);
  EmbedResult e = embed_image(cover, mark, params);
  const auto order = block_order(params, partition_blocks(cover).count());

  // Without interleaving chunk c carries coded bits [10c, 10c + 10); codeword w spans [31w, 31w + 31).
  // Chunk 0 lies inside codeword 0 and chunk 4 inside codeword 1.
  const ParityCheck pc{GaloisField(params.m)};
  const BlockLayout layout = partition_blocks(cover);
  auto current = [&](std::size_t chunk) {
    const std::size_t block = order[chunk];
    return extract_syndrome(pc, read_bits(load_block(e.stego, layout, block), select_slots(params, block), params.delta));
  };
  WatermarkChunk c0 = current(0);
  c0.s1 ^= 0b00100;
  force_chunk(e.stego, params, order[0], c0);
  WatermarkChunk c4 = current(4);
  c4.s1 ^= 0b00001;
  c4.s3 ^= 0b10000;
  force_chunk(e.stego, params, order[4], c4);

  const ExtractResult x = extract_image(e.stego, params, mark.size());
  CHECK(x.watermark == mark);
  CHECK(x.report.ecc_corrections == 3);
  CHECK(x.report.decode_failures == 0);
}

TEST_CASE("wrong key extracts noise", "[pipeline]") {
  std::mt19937_64 rng(12);
  const GrayImage cover = synthetic_image(512, 512, 4);
  Bits mark = random_bits(rng, 4096);
  EmbeddingParams params;
  params.key = 77;
  const EmbedResult e = embed_image(cover, mark, params);
  for (std::uint64_t k = 0; k < 20; ++k) {
    EmbeddingParams wrong = params;
    wrong.key = splitmix64(k + 1000);
    const double score = ncc(mark, extract_image(e.stego, wrong, mark.size()).watermark);
    CHECK(score < 0.6);
  }
}

TEST_CASE("flip-search variants and skip flag", "[pipeline]") {
  std::mt19937_64 rng(13);
  const GrayImage cover = synthetic_image(128, 128, 6);
  EmbeddingParams params;
  const Bits mark = random_bits(rng, 400);

  params.search = FlipSearch::chien;
  const EmbedResult chien = embed_image(cover, mark, params);
  CHECK(extract_image(chien.stego, params, mark.size()).watermark == mark);

  params.search = FlipSearch::lut;
  params.skip_zero_syndrome = true;
  params.ecc = {15, 11, 1};
  params.m = 3;
  params.band = default_band();
  const Bits small = random_bits(rng, 600);
  const EmbedResult skipped = embed_image(cover, small, params);
  CHECK(skipped.report.skipped_blocks > 0);
  CHECK(skipped.report.skipped_blocks == skipped.report.flips_histogram[0]);
  CHECK(extract_image(skipped.stego, params, small.size()).watermark == small);
}

TEST_CASE("reports", "[pipeline]") {
  const std::string d = describe(EmbeddingParams{});
  CHECK(d.find("m=5\n") != std::string::npos);
  CHECK(d.find("ecc=31,16,3\n") != std::string::npos);
  CHECK(d.find("delta=28\n") != std::string::npos);
  CHECK(d.find("alpha=0.2\n") != std::string::npos);
  EmbedReport r;
  r.flips_histogram = {1, 2, 3, 4};
  const std::string kv = to_key_value(r);
  CHECK(kv.find("flips_histogram=1,2,3,4\n") != std::string::npos);
  CHECK(kv.find("psnr_db=inf\n") != std::string::npos);
  CHECK(to_key_value(ExtractReport{}).find("decode_failures=0\n") != std::string::npos);
}
