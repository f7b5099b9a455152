// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dctbch/bch.hpp"
#include "dctbch/commands.hpp"
#include "dctbch/metrics.hpp"
#include "dctbch/root_lut.hpp"
#include "dctbch/synthetic.hpp"
#include "oracles.hpp"

using namespace dctbch;

namespace {

const std::string kData = DCTBCH_TEST_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      if (pass) detail << "failed: ";
      detail << why << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Bits random_bits(std::mt19937_64& rng, int n) {
  Bits b(static_cast<std::size_t>(n));
  for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1U);
  return b;
}

Bits mark64() { return read_pbm(kData + "/mark64.pbm").bits; }

void field_oracle(Outcome& out) {
  const auto start = Clock::now();
  std::size_t checked = 0;
  for (int m : {4, 5}) {
    const GaloisField f(m);
    const auto poly = f.primitive_poly();
    for (Element a = 0; a < f.size(); ++a) {
      for (Element b = 0; b < f.size(); ++b) {
        ++checked;
        if (f.mul(a, b) != oracle::mul(a, b, poly, m)) out.require(false, "mul mismatch");
      }
      if (a != 0 && f.inv(a) != *oracle::inv(a, poly, m)) out.require(false, "inv mismatch");
    }
  }
  const double secs = seconds_since(start);
  out.require(secs < 1.0, "took longer than 1 s");
  out.detail << checked << " products and 46 inverses match shift-and-add arithmetic in " << secs << " s";
}

void generator_polynomials(Outcome& out) {
  const GaloisField f4(4);
  const GaloisField f5(5);
  const std::string g1 = generator_polynomial(f4, 1).to_string();
  const std::string g2 = generator_polynomial(f4, 2).to_string();
  const BinaryPoly g3 = generator_polynomial(f5, 3);
  out.require(g1 == "x^4 + x + 1", "(15,11) generator is " + g1);
  out.require(g2 == "x^8 + x^7 + x^6 + x^4 + 1", "(15,7) generator is " + g2);
  out.require(g3.degree() == 15, "(31,16) generator degree " + std::to_string(g3.degree()));
  const std::uint64_t x31_1 = (std::uint64_t{1} << 31) | 1U;
  out.require(oracle::mod2(x31_1, g3.to_mask()) == 0, "(31,16) generator does not divide x^31 + 1");

  struct Row {
    int m, n, k, t;
  };
  for (const Row r : {Row{4, 15, 11, 1}, Row{4, 15, 7, 2}, Row{4, 15, 5, 3}, Row{5, 31, 26, 1}, Row{5, 31, 21, 2},
                      Row{5, 31, 16, 3}}) {
    const BchCode code(GaloisField(r.m), r.t);
    out.require(code.n() == r.n && code.k() == r.k,
                "(m=" + std::to_string(r.m) + ", t=" + std::to_string(r.t) + ") gives k=" + std::to_string(code.k()));
  }
  out.detail << "g(15,11) = " << g1 << "; g(15,7) = " << g2 << "; g(31,16) has degree 15 and divides x^31 + 1; "
             << "all six (n,k,t) rows reproduced";
}

void ecc_correction(Outcome& out) {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t trials = 0;
  std::size_t failures = 0;

  const BchCode small = BchCode::from_parameters(15, 7, 2);
  for (int word = 0; word < 100; ++word) {
    const Bits msg = random_bits(rng, 7);
    const Bits cw = small.encode(msg);
    for (int a = 0; a < 15; ++a) {
      for (int b = a; b < 15; ++b) {
        Bits r = cw;
        r[static_cast<std::size_t>(a)] ^= 1;
        if (b != a) r[static_cast<std::size_t>(b)] ^= 1;
        const DecodeResult d = small.decode(r);
        ++trials;
        failures += !(d.ok && d.message == msg);
      }
    }
  }
  const std::size_t small_trials = trials;

  const BchCode big = BchCode::from_parameters(31, 16, 3);
  std::vector<int> positions(31);
  for (int i = 0; i < 31; ++i) positions[static_cast<std::size_t>(i)] = i;
  for (int trial = 0; trial < 10000; ++trial) {
    const Bits msg = random_bits(rng, 16);
    Bits r = big.encode(msg);
    std::shuffle(positions.begin(), positions.end(), rng);
    const int weight = static_cast<int>(rng() % 4);
    for (int i = 0; i < weight; ++i) r[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] ^= 1;
    const DecodeResult d = big.decode(r);
    ++trials;
    failures += !(d.ok && d.message == msg && d.corrected == weight);
  }
  const double secs = seconds_since(start);
  out.require(failures == 0, std::to_string(failures) + " decode failures");
  out.require(secs < 30.0, "took longer than 30 s");
  out.detail << small_trials << " exhaustive (15,7,2) patterns and 10000 random (31,16,3) patterns, " << failures
             << " failures, " << secs << " s";
}

void lut_equivalence(Outcome& out) {
  std::size_t mismatches = 0;
  std::size_t cubics = 0;
  std::size_t quadratics = 0;
  const auto roots_of = [](const GaloisField& f, std::vector<oracle::Mask> coeffs) {
    std::vector<Element> r;
    for (auto x : oracle::roots(coeffs, f.primitive_poly(), f.m())) r.push_back(static_cast<Element>(x));
    return r;
  };

  for (int m : {4, 5}) {
    const GaloisField f(m);
    const RootTables t(f);
    for (Element a = 0; a < f.size(); ++a) {
      for (Element b = 0; b < f.size(); ++b) {
        ++quadratics;
        mismatches += solve_quadratic(t, f, a, b) != roots_of(f, {b, a, 1});
      }
    }
  }

  const GaloisField f16(4);
  const RootTables t16(f16);
  for (Element a = 0; a < 16; ++a)
    for (Element b = 0; b < 16; ++b)
      for (Element c = 0; c < 16; ++c) {
        ++cubics;
        mismatches += solve_cubic(t16, f16, a, b, c) != roots_of(f16, {c, b, a, 1});
      }

  const GaloisField f32(5);
  const RootTables t32(f32);
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100000; ++i) {
    const auto a = static_cast<Element>(rng() % 32);
    const auto b = static_cast<Element>(rng() % 32);
    const auto c = static_cast<Element>(rng() % 32);
    ++cubics;
    mismatches += solve_cubic(t32, f32, a, b, c) != roots_of(f32, {c, b, a, 1});
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " root-set mismatches");
  out.detail << "4096 GF(16) cubics, 100000 sampled GF(32) cubics and " << quadratics
             << " quadratics match exhaustive evaluation (" << mismatches << " mismatches)";
}

void covering_property(Outcome& out) {
  const ParityCheck pc{GaloisField(4)};
  const RootTables tables(pc.field());
  const auto best = oracle::min_weight_table(pc.field().primitive_poly(), 4);
  int exceptions = 0;
  int max_weight = 0;
  for (Element s1 = 0; s1 < 16; ++s1) {
    for (Element s3 = 0; s3 < 16; ++s3) {
      const auto e = find_flip_pattern_lut(pc, tables, {s1, s3});
      const int expected = best[(static_cast<std::size_t>(s1) << 4) | s3];
      if (!e || static_cast<int>(e->weight()) != expected || e->weight() > 3 ||
          !(syndrome_of(pc, *e) == SyndromePair{s1, s3})) {
        ++exceptions;
        continue;
      }
      max_weight = std::max(max_weight, static_cast<int>(e->weight()));
    }
  }
  out.require(exceptions == 0, std::to_string(exceptions) + " syndromes off the brute-force minimum");
  out.detail << "256 syndrome pairs over GF(16), every pattern minimal (max weight " << max_weight << "), "
             << exceptions << " exceptions";
}

void blind_round_trip(Outcome& out) {
  const Bits mark = mark64();
  const EmbeddingParams params;
  struct Cover {
    const char* name;
    GrayImage image;
  };
  const Cover covers[] = {{"synthetic", synthetic_image(512, 512, 1)}, {"camera", read_pgm(kData + "/camera.pgm")}};
  for (const auto& c : covers) {
    const EmbedResult e = embed_image(c.image, mark, params);
    const GrayImage reloaded = decode_pgm(encode_pgm(e.stego));
    const ExtractResult x = extract_image(reloaded, params, mark.size());
    const double b = ber(x.watermark, mark);
    const double n = ncc(mark, x.watermark);
    out.require(b == 0.0 && n == 1.0, std::string(c.name) + " BER " + std::to_string(b));
    out.detail << c.name << ": BER " << b << ", NCC " << n << ", corrections " << x.report.ecc_corrections << "; ";
  }
}

void imperceptibility(Outcome& out) {
  const Bits mark = mark64();
  for (const char* name : {"camera", "astronaut"}) {
    const EmbedResult e = embed_image(read_pgm(kData + "/" + name + ".pgm"), mark, EmbeddingParams{});
    const double db = e.report.psnr_db.value_or(1e9);
    out.require(db >= 38.0, std::string(name) + " PSNR below 38 dB");
    out.detail << name << " " << format_db(e.report.psnr_db, 2) << " dB; ";
  }
  const EmbedResult s = embed_image(synthetic_image(512, 512, 1), mark, EmbeddingParams{});
  out.require(s.report.psnr_db.value_or(1e9) >= 38.0, "synthetic PSNR below 38 dB");
  out.detail << "synthetic " << format_db(s.report.psnr_db, 2) << " dB (target >= 38)";
}

void robustness(Outcome& out) {
  const Bits mark = mark64();
  const auto attacks = parse_attack_list("jpeg:q=70,wiener3x3,rotate:deg=2");
  for (const char* name : {"camera", "astronaut"}) {
    const auto rows = evaluate(read_pgm(kData + "/" + name + ".pgm"), mark, EmbeddingParams{}, attacks, 1);
    const double jpeg_ncc = rows[0].ncc.value_or(0.0);
    const double wiener_ncc = rows[1].ncc.value_or(0.0);
    const double rotate_ncc = rows[2].ncc.value_or(0.0);
    out.require(jpeg_ncc >= 0.85 && rows[0].ber <= 0.10, std::string(name) + " JPEG q70 below floor");
    out.require(wiener_ncc >= rotate_ncc, std::string(name) + " wiener NCC below unaligned rotation NCC");
    char line[200];
    std::snprintf(line, sizeof line, "%s: jpeg70 NCC %.4f BER %.4f, wiener NCC %.4f >= rotate2 NCC %.4f; ", name,
                  jpeg_ncc, rows[0].ber, wiener_ncc, rotate_ncc);
    out.detail << line;
  }
}

void lut_speedup(Outcome& out) {
  const auto start = Clock::now();
  BenchOptions options;
  options.m = 5;
  options.trials = 100000;
  const BenchResult r = run_bench(options);
  const double secs = seconds_since(start);
  out.require(r.median_speedup() >= 2.0, "median speedup below 2x");
  out.require(r.weight_agreements == r.trials, "weight disagreement between LUT and Chien search");
  out.require(secs < 60.0, "took longer than 60 s");
  char line[240];
  std::snprintf(line, sizeof line,
                "median LUT %.0f ns vs Chien %.0f ns (%.1fx), p99 %.0f vs %.0f ns, weight agreement %.1f%%, %.1f s",
                r.lut.median_ns, r.chien.median_ns, r.median_speedup(), r.lut.p99_ns, r.chien.p99_ns,
                r.agreement_percent(), secs);
  out.detail << line;
}

void determinism(Outcome& out) {
  const GrayImage cover = read_pgm(kData + "/camera.pgm");
  const Bits mark = mark64();
  const auto attacks = parse_attack_list(
      "none,wiener3x3,median3x3,noise:var=0.01,gaussian:sigma=0.5,rotate:deg=2,rotate:deg=2:realign,jpeg:q=70,"
      "resize:half");
  EmbeddingParams params;
  params.key = 31337;
  const std::string first = evaluate_csv(evaluate(cover, mark, params, attacks, 99));
  const std::string second = evaluate_csv(evaluate(cover, mark, params, attacks, 99));
  out.require(first == second, "CSV reports differ");
  out.detail << "two evaluate runs over " << attacks.size() << " attacks produced " << first.size()
             << "-byte CSV reports that are " << (first == second ? "identical" : "different");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"field arithmetic matches brute-force oracle", field_oracle},
      {"generator polynomials and code parameters", generator_polynomials},
      {"ECC corrects every pattern up to t", ecc_correction},
      {"LUT root finding equals exhaustive search", lut_equivalence},
      {"covering radius 3 with minimal flips (m=4)", covering_property},
      {"blind round trip, BER 0 and NCC 1", blind_round_trip},
      {"embedding PSNR >= 38 dB at defaults", imperceptibility},
      {"robustness floor and attack ordering", robustness},
      {"LUT flip search >= 2x faster than Chien search", lut_speedup},
      {"evaluate reports are reproducible", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    failed += !out.pass;
    std::printf("[%s] criterion %zu: %s -- %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu acceptance criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size());
  return failed == 0 ? 0 : 1;
}
