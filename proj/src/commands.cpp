#include "dctbch/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dctbch/errors.hpp"
#include "dctbch/metrics.hpp"
#include "dctbch/random.hpp"
#include "dctbch/root_lut.hpp"
#include "dctbch/synthetic.hpp"

namespace dctbch {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point a, Clock::time_point b) {
  return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

/// Nearest-rank percentile of an unsorted sample.
double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(v.size())));
  const std::size_t idx = std::min(v.size() - 1, rank == 0 ? 0 : rank - 1);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
  return v[idx];
}

double embed_blocks_per_second(const EmbeddingParams& params, const GrayImage& cover, const Bits& payload) {
  const auto start = Clock::now();
  const EmbedResult r = embed_image(cover, payload, params);
  const double seconds = elapsed_ns(start, Clock::now()) * 1e-9;
  return seconds > 0.0 ? static_cast<double>(r.report.blocks_used) / seconds : 0.0;
}

struct ReferenceRow {
  int n, k, t;
  double rate, t_over_n;
};

constexpr ReferenceRow kReferenceRows[] = {
    {15, 11, 1, 0.733, 0.066}, {15, 7, 2, 0.466, 0.133}, {15, 5, 3, 0.333, 0.2},
    {31, 26, 1, 0.837, 0.032}, {31, 21, 2, 0.677, 0.095}, {31, 16, 3, 0.516, 0.187},
};

constexpr double kReferenceTolerance = 0.002;

}  // namespace

std::vector<EvaluateRow> evaluate(const GrayImage& cover, const Bits& mark, const EmbeddingParams& params,
                                  const std::vector<AttackSpec>& attacks, std::uint64_t seed) {
  std::vector<EvaluateRow> rows;
  if (attacks.empty()) return rows;
  const EmbedResult embedded = embed_image(cover, mark, params);

  for (std::size_t i = 0; i < attacks.size(); ++i) {
    EvaluateRow row;
    row.attack = to_string(attacks[i]);
    try {
      const GrayImage attacked = apply_attack(embedded.stego, attacks[i], splitmix64(seed ^ i));
      row.psnr_db = psnr(embedded.stego, attacked);
      const ExtractResult extracted = extract_image(attacked, params, mark.size());
      if (std::any_of(mark.begin(), mark.end(), [](std::uint8_t b) { return b != 0; })) {
        row.ncc = ncc(mark, extracted.watermark);
      }
      row.ber = ber(extracted.watermark, mark);
      row.ecc_corrections = extracted.report.ecc_corrections;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string evaluate_csv(const std::vector<EvaluateRow>& rows) {
  std::ostringstream out;
  out << kEvaluateCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.attack << ',';
    if (!row.error.empty()) {
      out << "NA,NA,NA,NA\n";
      continue;
    }
    out << format_db(row.psnr_db) << ',' << (row.ncc ? fixed(*row.ncc, 6) : "NA") << ',' << fixed(row.ber, 6) << ','
        << row.ecc_corrections << '\n';
  }
  return out.str();
}

BenchResult run_bench(const BenchOptions& options) {
  if (options.m < 3 || options.m > 6) throw ConfigError("bench supports m in [3, 6]");
  if (options.trials == 0) throw ConfigError("bench needs at least one trial");

  BenchResult result;
  result.m = options.m;
  result.trials = options.trials;

  const ParityCheck pc{GaloisField(options.m)};
  const auto build_start = Clock::now();
  const RootTables tables(pc.field());
  result.table_build_ms = elapsed_ns(build_start, Clock::now()) * 1e-6;

  KeyedRng rng(options.seed);
  const auto field_size = static_cast<std::uint64_t>(pc.field().size());
  std::vector<SyndromePair> syndromes(options.trials);
  for (auto& s : syndromes) {
    s.s1 = static_cast<Element>(rng.below(field_size));
    s.s3 = static_cast<Element>(rng.below(field_size));
  }

  std::vector<double> lut_ns(options.trials);
  std::vector<double> chien_ns(options.trials);
  FlipSearchStats lut_stats;
  FlipSearchStats chien_stats;
  for (std::size_t i = 0; i < options.trials; ++i) {
    auto t0 = Clock::now();
    const auto a = find_flip_pattern_lut(pc, tables, syndromes[i], &lut_stats);
    auto t1 = Clock::now();
    const auto b = find_flip_pattern_chien(pc, syndromes[i], &chien_stats);
    auto t2 = Clock::now();
    lut_ns[i] = elapsed_ns(t0, t1);
    chien_ns[i] = elapsed_ns(t1, t2);
    if (a && b && a->weight() == b->weight()) ++result.weight_agreements;
  }
  const auto trials = static_cast<double>(options.trials);
  result.lut = {percentile(lut_ns, 50.0), percentile(lut_ns, 99.0), static_cast<double>(lut_stats.probes) / trials};
  result.chien = {percentile(chien_ns, 50.0), percentile(chien_ns, 99.0),
                  static_cast<double>(chien_stats.probes) / trials};

  if (options.embed_throughput) {
    EmbeddingParams params;
    params.m = options.m;
    params.key = options.seed;
    const GrayImage cover = synthetic_image(256, 256, options.seed);
    Bits payload(max_payload_bits(params, cover) * 4 / 5);
    for (auto& bit : payload) bit = static_cast<std::uint8_t>(rng.below(2));
    params.search = FlipSearch::lut;
    result.lut_embed_blocks_per_s = embed_blocks_per_second(params, cover, payload);
    params.search = FlipSearch::chien;
    result.chien_embed_blocks_per_s = embed_blocks_per_second(params, cover, payload);
  }
  return result;
}

std::string bench_csv(const BenchResult& r) {
  std::ostringstream out;
  out << "metric,value\n"
      << "m," << r.m << '\n'
      << "trials," << r.trials << '\n'
      << "table_build_ms," << fixed(r.table_build_ms, 4) << '\n'
      << "lut_median_ns," << fixed(r.lut.median_ns, 1) << '\n'
      << "lut_p99_ns," << fixed(r.lut.p99_ns, 1) << '\n'
      << "lut_mean_probes," << fixed(r.lut.mean_probes, 2) << '\n'
      << "chien_median_ns," << fixed(r.chien.median_ns, 1) << '\n'
      << "chien_p99_ns," << fixed(r.chien.p99_ns, 1) << '\n'
      << "chien_mean_probes," << fixed(r.chien.mean_probes, 2) << '\n'
      << "median_speedup," << fixed(r.median_speedup(), 3) << '\n'
      << "weight_agreement_percent," << fixed(r.agreement_percent(), 3) << '\n';
  if (r.lut_embed_blocks_per_s) out << "lut_embed_blocks_per_s," << fixed(*r.lut_embed_blocks_per_s, 1) << '\n';
  if (r.chien_embed_blocks_per_s) out << "chien_embed_blocks_per_s," << fixed(*r.chien_embed_blocks_per_s, 1) << '\n';
  return out.str();
}

bool CodeParameters::rate_mismatch() const {
  return reference_rate && std::abs(*reference_rate - rate) > kReferenceTolerance;
}

bool CodeParameters::t_over_n_mismatch() const {
  return reference_t_over_n && std::abs(*reference_t_over_n - t_over_n) > kReferenceTolerance;
}

CodeParameters code_parameters(int m, int t) {
  if (m < 3 || m > 8) throw ConfigError("code tables support m in [3, 8]");
  if (t < 1) throw ConfigError("t must be at least 1");
  std::optional<BchCode> code;
  try {
    code.emplace(GaloisField(m), t);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("no binary BCH code for m = " + std::to_string(m) + ", t = " + std::to_string(t) + ": " +
                      e.what());
  }
  CodeParameters p;
  p.m = m;
  p.n = code->n();
  p.k = code->k();
  p.t = t;
  p.rate = code->rate();
  p.t_over_n = static_cast<double>(t) / p.n;
  for (const auto& ref : kReferenceRows) {
    if (ref.n == p.n && ref.k == p.k && ref.t == p.t) {
      p.reference_rate = ref.rate;
      p.reference_t_over_n = ref.t_over_n;
    }
  }
  return p;
}

std::vector<CodeParameters> standard_code_table() {
  std::vector<CodeParameters> rows;
  for (int m : {4, 5}) {
    for (int t : {1, 2, 3}) rows.push_back(code_parameters(m, t));
  }
  return rows;
}

std::string format_code_table(const std::vector<CodeParameters>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%3s %4s %4s %3s %8s %8s %10s %10s\n", "m", "n", "k", "t", "R=k/n", "t/n", "ref R",
                "ref t/n");
  out << line;
  bool flagged = false;
  for (const auto& r : rows) {
    const auto ref = [](const std::optional<double>& v, bool bad) {
      return v ? fixed(*v, 3) + (bad ? "*" : " ") : std::string("-");
    };
    std::snprintf(line, sizeof line, "%3d %4d %4d %3d %8.4f %8.4f %10s %10s\n", r.m, r.n, r.k, r.t, r.rate,
                  r.t_over_n, ref(r.reference_rate, r.rate_mismatch()).c_str(),
                  ref(r.reference_t_over_n, r.t_over_n_mismatch()).c_str());
    out << line;
    flagged = flagged || r.rate_mismatch() || r.t_over_n_mismatch();
  }
  if (flagged) out << "* published value disagrees with the recomputed one by more than 0.002\n";
  return out.str();
}

}  // namespace dctbch
