#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dctbch/attacks.hpp"
#include "dctbch/pipeline.hpp"

namespace dctbch {

// ---- evaluate -------------------------------------------------------------

struct EvaluateRow {
  std::string attack;
  /// Attacked stego against the clean stego.
  std::optional<double> psnr_db;
  std::optional<double> ncc;
  double ber = 0.0;
  std::size_t ecc_corrections = 0;
  /// Empty when the row succeeded; the numeric columns are then meaningful.
  std::string error;
};

/// Embeds `mark` once, then runs every attack on the stego image and extracts.
/// Attack i draws its randomness from splitmix64(seed ^ i). A failing attack
/// produces a row with `error` set instead of aborting the grid.
std::vector<EvaluateRow> evaluate(const GrayImage& cover, const Bits& mark, const EmbeddingParams& params,
                                  const std::vector<AttackSpec>& attacks, std::uint64_t seed);

inline constexpr const char* kEvaluateCsvHeader = "attack,psnr_db,ncc,ber,ecc_corrections";
/// Header plus one row per attack. Failed rows print NA in every numeric column.
std::string evaluate_csv(const std::vector<EvaluateRow>& rows);

// ---- bench ----------------------------------------------------------------

struct BenchOptions {
  int m = 5;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  /// Also time a full embed with each flip search.
  bool embed_throughput = true;
};

struct LatencySummary {
  double median_ns = 0.0;
  double p99_ns = 0.0;
  double mean_probes = 0.0;
};

struct BenchResult {
  int m = 0;
  std::size_t trials = 0;
  double table_build_ms = 0.0;
  LatencySummary lut;
  LatencySummary chien;
  /// Trials where both searches returned a pattern of the same weight.
  std::size_t weight_agreements = 0;
  std::optional<double> lut_embed_blocks_per_s;
  std::optional<double> chien_embed_blocks_per_s;

  double agreement_percent() const {
    return trials == 0 ? 100.0 : 100.0 * static_cast<double>(weight_agreements) / static_cast<double>(trials);
  }
  double median_speedup() const { return lut.median_ns > 0.0 ? chien.median_ns / lut.median_ns : 0.0; }
};

/// Times find_flip_pattern_lut against find_flip_pattern_chien on uniformly
/// random syndrome pairs. Throws ConfigError for m outside [3, 6] or zero trials.
BenchResult run_bench(const BenchOptions& options);

/// "metric,value" rows.
std::string bench_csv(const BenchResult& result);

// ---- tables ---------------------------------------------------------------

struct CodeParameters {
  int m = 0;
  int n = 0;
  int k = 0;
  int t = 0;
  double rate = 0.0;
  double t_over_n = 0.0;
  /// Published (R, t/n) for the six standard configurations, when this is one of them.
  std::optional<double> reference_rate;
  std::optional<double> reference_t_over_n;

  /// True when a reference value differs from the recomputed one by more than 0.002.
  bool rate_mismatch() const;
  bool t_over_n_mismatch() const;
};

/// Throws ConfigError for unsupported (m, t).
CodeParameters code_parameters(int m, int t);
/// (m, t) in {4, 5} x {1, 2, 3}.
std::vector<CodeParameters> standard_code_table();
/// Aligned text table; mismatching reference values are marked with '*'.
std::string format_code_table(const std::vector<CodeParameters>& rows);

}  // namespace dctbch
