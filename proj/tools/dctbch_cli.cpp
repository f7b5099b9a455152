// Command-line front end: embed, extract, attack, evaluate, bench, tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "dctbch/attacks.hpp"
#include "dctbch/commands.hpp"
#include "dctbch/errors.hpp"
#include "dctbch/metrics.hpp"
#include "dctbch/pipeline.hpp"

namespace fs = std::filesystem;
using dctbch::Bits;
using dctbch::ConfigError;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kIo = 1, kConfig = 2, kInternal = 3 };

struct ParamFlags {
  int m = 5;
  std::string ecc = "31,16,3";
  double delta = dctbch::EmbeddingParams{}.delta;
  std::uint64_t key = 0;
  std::string search = "lut";
  bool no_interleave = false;
  bool skip_zero_syndrome = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--m", m, "Field degree of the embedding code (4 or 5)")->check(CLI::IsMember({4, 5}));
    cmd.add_option("--ecc", ecc, "Protection code as n,k,t");
    cmd.add_option("--delta", delta, "Quantiser step in luminance units");
    cmd.add_option("--key", key, "Secret key for slot and block selection");
    cmd.add_option("--search", search, "Flip search: lut or chien")->check(CLI::IsMember({"lut", "chien"}));
    cmd.add_flag("--no-interleave", no_interleave, "Embed the coded stream without bit interleaving");
    cmd.add_flag("--skip-zero-syndrome", skip_zero_syndrome, "Leave blocks that already carry their chunk untouched");
  }

  dctbch::EmbeddingParams resolve() const {
    dctbch::EmbeddingParams p;
    p.m = m;
    p.delta = delta;
    p.key = key;
    p.search = search == "chien" ? dctbch::FlipSearch::chien : dctbch::FlipSearch::lut;
    p.interleave = !no_interleave;
    p.skip_zero_syndrome = skip_zero_syndrome;
    static const std::regex triple(R"(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*)");
    std::smatch match;
    if (!std::regex_match(ecc, match, triple)) throw ConfigError("--ecc expects n,k,t, got '" + ecc + "'");
    p.ecc = {std::stoi(match[1]), std::stoi(match[2]), std::stoi(match[3])};
    p.validate();
    return p;
  }
};

/// Watermarks are PBM when the file carries a P4 header, raw bitstreams otherwise.
Bits read_mark(const fs::path& path) {
  const std::string bytes = dctbch::read_file(path);
  if (bytes.rfind("P4", 0) == 0) return dctbch::decode_pbm(bytes).bits;
  return dctbch::decode_raw_bits(bytes);
}

struct Length {
  std::size_t bits = 0;
  std::optional<std::pair<int, int>> shape;
};

Length parse_length(const std::string& text) {
  static const std::regex wxh(R"((\d+)x(\d+))");
  static const std::regex plain(R"(\d+)");
  std::smatch match;
  Length len;
  if (std::regex_match(text, match, wxh)) {
    const int w = std::stoi(match[1]);
    const int h = std::stoi(match[2]);
    if (w <= 0 || h <= 0) throw ConfigError("--length dimensions must be positive");
    len.shape = {w, h};
    len.bits = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  } else if (std::regex_match(text, plain)) {
    len.bits = std::stoull(text);
  } else {
    throw ConfigError("--length expects WxH or a bit count, got '" + text + "'");
  }
  return len;
}

json params_json(const dctbch::EmbeddingParams& p) {
  return {{"m", p.m},
          {"ecc", {p.ecc.n, p.ecc.k, p.ecc.t}},
          {"delta", p.delta},
          {"key", p.key},
          {"band", p.band},
          {"interleave", p.interleave},
          {"skip_zero_syndrome", p.skip_zero_syndrome},
          {"search", p.search == dctbch::FlipSearch::lut ? "lut" : "chien"},
          {"alpha", p.alpha}};
}

json db_json(const std::optional<double>& db) { return db ? json(*db) : json("inf"); }

void write_json(const std::string& path, const json& doc) {
  if (!path.empty()) dctbch::write_file(path, doc.dump(2) + "\n");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    dctbch::write_file(path, text);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Blind DCT-domain watermarking with BCH syndrome coding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dctbch 1.0.0");

  std::string cover, mark, out, in, report, length, attack_list = "none", attack_one;
  std::uint64_t seed = 1;
  std::size_t trials = 100000;
  int tables_m = 0;
  int tables_t = 0;

  ParamFlags embed_flags, extract_flags, eval_flags;

  auto* embed = app.add_subcommand("embed", "Embed a watermark into a cover image");
  embed->add_option("--cover", cover, "Cover image (PGM P5)")->required();
  embed->add_option("--mark", mark, "Watermark (PBM P4 or raw bitstream)")->required();
  embed->add_option("--out", out, "Stego image to write (PGM P5)")->required();
  embed->add_option("--report", report, "Optional JSON report path");
  embed_flags.attach(*embed);

  auto* extract = app.add_subcommand("extract", "Blindly extract a watermark from a stego image");
  extract->add_option("--in", in, "Stego image (PGM P5)")->required();
  extract->add_option("--length", length, "Watermark size: WxH writes PBM, a bit count writes raw bits")->required();
  extract->add_option("--out", out, "Recovered watermark path")->required();
  extract->add_option("--mark", mark, "Optional reference watermark; adds NCC and BER to the report");
  extract->add_option("--report", report, "Optional JSON report path");
  extract_flags.attach(*extract);

  auto* attack = app.add_subcommand("attack", "Apply one attack to an image");
  attack->add_option("--in", in, "Input image (PGM P5)")->required();
  attack->add_option("--out", out, "Attacked image (PGM P5)")->required();
  attack->add_option("--attack", attack_one, "Attack spec, e.g. jpeg:q=70")->required();
  attack->add_option("--seed", seed, "Seed for randomised attacks");

  auto* evaluate = app.add_subcommand("evaluate", "Embed once and measure extraction under an attack grid");
  evaluate->add_option("--cover", cover, "Cover image (PGM P5)")->required();
  evaluate->add_option("--mark", mark, "Watermark (PBM P4 or raw bitstream)")->required();
  evaluate->add_option("--attack", attack_list, "Comma-separated attack specs");
  evaluate->add_option("--seed", seed, "Seed for randomised attacks");
  evaluate->add_option("--out", out, "CSV output path (default: stdout)");
  evaluate->add_option("--report", report, "Optional JSON report path");
  eval_flags.attach(*evaluate);

  auto* bench = app.add_subcommand("bench", "Time LUT against Chien-search flip-pattern search");
  int bench_m = 5;
  bench->add_option("--m", bench_m, "Field degree")->check(CLI::Range(3, 6));
  bench->add_option("--trials", trials, "Random syndromes to time");
  bench->add_option("--seed", seed, "Seed for the syndrome sample");
  bench->add_option("--out", out, "CSV output path (default: stdout)");

  auto* tables = app.add_subcommand("tables", "Print BCH code parameters");
  tables->add_option("--m", tables_m, "Field degree (default: the six standard codes)");
  tables->add_option("--t", tables_t, "Error-correcting capability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*embed) {
    const auto params = embed_flags.resolve();
    const auto image = dctbch::read_pgm(cover);
    const Bits bits = read_mark(mark);
    const auto result = dctbch::embed_image(image, bits, params);
    dctbch::write_pgm(out, result.stego);
    std::cout << dctbch::describe(params) << dctbch::to_key_value(result.report);
    const auto& r = result.report;
    write_json(report, {{"command", "embed"},
                        {"params", params_json(params)},
                        {"psnr_db", db_json(r.psnr_db)},
                        {"blocks_used", r.blocks_used},
                        {"flips_histogram", r.flips_histogram},
                        {"ecc_corrections", 0},
                        {"failures", r.unembeddable_blocks + r.unsettled_blocks},
                        {"payload_bits", r.payload_bits},
                        {"coded_bits", r.coded_bits},
                        {"capacity_bits", r.capacity_bits}});
    return kOk;
  }

  if (*extract) {
    const auto params = extract_flags.resolve();
    const Length len = parse_length(length);
    const auto image = dctbch::read_pgm(in);
    std::optional<Bits> reference;
    if (!mark.empty()) reference = read_mark(mark);
    const auto result = dctbch::extract_image(image, params, len.bits);
    if (len.shape) {
      dctbch::write_pbm(out, {len.shape->first, len.shape->second, result.watermark});
    } else {
      dctbch::write_raw_bits(out, result.watermark);
    }
    std::cout << dctbch::describe(params) << dctbch::to_key_value(result.report);
    json doc = {{"command", "extract"},
                {"params", params_json(params)},
                {"psnr_db", nullptr},
                {"blocks_used", result.report.blocks_read},
                {"flips_histogram", nullptr},
                {"ecc_corrections", result.report.ecc_corrections},
                {"failures", result.report.decode_failures},
                {"codewords", result.report.codewords}};
    if (reference) {
      if (reference->size() != result.watermark.size()) {
        throw ConfigError("reference watermark has " + std::to_string(reference->size()) + " bits, expected " +
                          std::to_string(result.watermark.size()));
      }
      const double b = dctbch::ber(result.watermark, *reference);
      std::cout << "ber=" << b << '\n';
      doc["ber"] = b;
      if (std::any_of(reference->begin(), reference->end(), [](std::uint8_t v) { return v != 0; })) {
        const double n = dctbch::ncc(*reference, result.watermark);
        std::cout << "ncc=" << n << '\n';
        doc["ncc"] = n;
      }
    }
    write_json(report, doc);
    return kOk;
  }

  if (*attack) {
    const auto spec = dctbch::parse_attack(attack_one);
    dctbch::write_pgm(out, dctbch::apply_attack(dctbch::read_pgm(in), spec, seed));
    return kOk;
  }

  if (*evaluate) {
    const auto params = eval_flags.resolve();
    const auto specs = dctbch::parse_attack_list(attack_list);
    const auto image = dctbch::read_pgm(cover);
    const Bits bits = read_mark(mark);
    const auto rows = dctbch::evaluate(image, bits, params, specs, seed);
    write_text(out, dctbch::evaluate_csv(rows));
    json attacks = json::array();
    for (const auto& s : specs) attacks.push_back(dctbch::to_string(s));
    write_json(report, {{"command", "evaluate"}, {"params", params_json(params)}, {"attacks", attacks}, {"seed", seed}});
    return kOk;
  }

  if (*bench) {
    dctbch::BenchOptions options;
    options.m = bench_m;
    options.trials = trials;
    options.seed = seed;
    write_text(out, dctbch::bench_csv(dctbch::run_bench(options)));
    return kOk;
  }

  if (*tables) {
    std::vector<dctbch::CodeParameters> rows;
    if (tables_m == 0 && tables_t == 0) {
      rows = dctbch::standard_code_table();
    } else {
      if (tables_m == 0 || tables_t == 0) throw ConfigError("tables needs both --m and --t, or neither");
      rows.push_back(dctbch::code_parameters(tables_m, tables_t));
    }
    std::cout << dctbch::format_code_table(rows);
    return kOk;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dctbch::CapacityError& e) {
    std::cerr << "error: " << e.what() << " (max payload " << e.max_payload_bits() << " bits)\n";
    return kConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const dctbch::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
