#include "blockmonte/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "blockmonte/combinatorics.hpp"
#include "blockmonte/errors.hpp"
#include "blockmonte/geometry.hpp"
#include "blockmonte/manifest.hpp"
#include "blockmonte/numtheory.hpp"
#include "blockmonte/report.hpp"

namespace blockmonte {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDegenerate = 1;
constexpr int kExitInvalid = 2;

MasterSeed seed_from_environment() {
  const char* env = std::getenv("BLOCKMONTE_SEED");
  if (env == nullptr || *env == '\0') return MasterSeed{0};
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return MasterSeed{v};
  } catch (const std::exception&) {
    throw ConfigError("BLOCKMONTE_SEED", "expected a non-negative integer, got \"" + std::string(env) + "\"");
  }
}

std::int64_t oracle_int(const std::vector<std::string>& args, std::size_t i, const char* name) {
  if (i >= args.size()) throw ConfigError(name, "missing argument");
  try {
    std::size_t used = 0;
    const long long v = std::stoll(args[i], &used);
    if (used != args[i].size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(name, "expected an integer, got \"" + args[i] + "\"");
  }
}

std::uint64_t oracle_positive(const std::vector<std::string>& args, std::size_t i, const char* name) {
  const std::int64_t v = oracle_int(args, i, name);
  if (v < 1) throw ConfigError(name, "must be >= 1");
  return static_cast<std::uint64_t>(v);
}

int run_oracle(const std::string& name, const std::vector<std::string>& args, std::ostream& out) {
  out << std::setprecision(15);
  if (name == "derangement_count") {
    out << derangement_count(static_cast<int>(oracle_int(args, 0, "n"))) << "\n";
  } else if (name == "zigzag_count") {
    out << zigzag_count(static_cast<int>(oracle_int(args, 0, "n"))) << "\n";
  } else if (name == "zeta_partial") {
    out << zeta_partial(static_cast<int>(oracle_int(args, 0, "s")), oracle_positive(args, 1, "terms")) << "\n";
  } else if (name == "euler_product_partial") {
    out << euler_product_partial(static_cast<int>(oracle_int(args, 0, "s")), oracle_positive(args, 1, "prime_bound"))
        << "\n";
  } else if (name == "archimedes_bounds") {
    const PiBounds b = archimedes_bounds(static_cast<int>(oracle_int(args, 0, "doublings")));
    out << b.lower << " " << b.upper << "\n";
  } else if (name == "coprime_probability_exact") {
    const Fraction f = coprime_probability_exact(static_cast<int>(oracle_int(args, 0, "m")),
                                                 oracle_positive(args, 1, "bound"));
    out << f.numerator() << "/" << f.denominator() << " " << boost::rational_cast<double>(f) << "\n";
  } else {
    throw ConfigError("oracle", "unknown oracle \"" + name +
                                    "\" (derangement_count, zigzag_count, zeta_partial, euler_product_partial, "
                                    "archimedes_bounds, coprime_probability_exact)");
  }
  return kExitOk;
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("param", "expected key=value, got \"" + item + "\"");
    params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return params;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-world Monte Carlo estimators for sqrt(2), pi, e, zeta(m), sec(1)+tan(1) and integrals",
               "blockmonte"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned workers = 1;
  bool timing = false;
  app.add_option("--workers", workers, "Worker threads per experiment")->check(CLI::Range(1u, 1024u));
  app.add_flag("--timing", timing, "Record wall_ms in reports");

  auto* est = app.add_subcommand("estimate", "Run one experiment");
  std::string variant_name;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 10000;
  std::vector<std::string> param_items;
  std::string out_dir;
  std::string format_list = "jsonl";
  std::string from_counts;
  std::string run_id = "estimate";
  est->add_option("variant", variant_name, "sqrt2 | pi | e | zeta | sec_tan | integral")->required();
  est->add_option("--seed", seed, "Master seed (default $BLOCKMONTE_SEED or 0)");
  est->add_option("--trials", trials, "Number of trials");
  est->add_option("--param", param_items, "Variant parameter key=value (repeatable)");
  est->add_option("--out", out_dir, "Write report files to this directory instead of stdout");
  est->add_option("--format", format_list, "Comma-separated subset of jsonl,csv,svg,txt");
  est->add_option("--from-counts", from_counts, "Skip sampling; use recorded counts A,B");
  est->add_option("--run-id", run_id, "Report run id");

  auto* run = app.add_subcommand("run", "Run a manifest file");
  std::string manifest_path;
  std::string run_out;
  run->add_option("manifest", manifest_path, "Manifest file")->required();
  run->add_option("--out", run_out, "Override the manifest's output_dir");

  auto* raster = app.add_subcommand("raster", "Rasterize a shape");
  auto* circle = raster->add_subcommand("circle", "Block circle of integer radius");
  raster->require_subcommand(1);
  std::int64_t radius = 11;
  bool as_text = false;
  circle->add_option("--radius", radius, "Radius in blocks")->required();
  circle->add_flag("--txt", as_text, "Draw as text ('#' block, '.' empty)");

  auto* oracle = app.add_subcommand("oracle", "Exact reference values");
  std::string oracle_name;
  std::vector<std::string> oracle_args;
  oracle->add_option("name", oracle_name, "Oracle name")->required();
  oracle->add_option("args", oracle_args, "Oracle arguments");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    const RunOptions options{workers, timing};
    if (est->parsed()) {
      ManifestEntry entry;
      entry.name = variant_name;
      entry.config.variant = parse_variant(variant_name);
      entry.config.seed = seed ? MasterSeed{*seed} : seed_from_environment();
      entry.config.trials = trials;
      entry.config.params = parse_params(param_items);
      if (!from_counts.empty()) entry.from_counts = parse_counts(from_counts);

      RunManifest manifest;
      manifest.run_id = run_id;
      manifest.entries.push_back(std::move(entry));
      manifest.formats.clear();
      std::stringstream ss(format_list);
      for (std::string f; std::getline(ss, f, ',');) {
        if (!f.empty()) manifest.formats.insert(f);
      }
      manifest.validate();
      if (out_dir.empty()) {
        const auto records = run_entries(manifest, options);
        for (const auto& r : records) {
          if (manifest.formats.count("jsonl")) out << to_jsonl_line(r, manifest.run_id);
          if (manifest.formats.count("csv")) out << csv_header() << to_csv_row(r, manifest.run_id);
          if (manifest.formats.count("txt")) out << summary_line(r) << "\n";
          if (r.failed) err << "degenerate: " << r.failure << "\n";
        }
        for (const auto& r : records) {
          if (r.failed) return kExitDegenerate;
        }
        return kExitOk;
      }
      manifest.output_dir = out_dir;
      const RunResult result = run_experiment(manifest, options);
      for (const auto& f : result.files) out << f.string() << "\n";
      return result.exit_code;
    }
    if (run->parsed()) {
      RunManifest manifest = load_manifest(manifest_path, seed_from_environment());
      if (!run_out.empty()) manifest.output_dir = run_out;
      const RunResult result = run_experiment(manifest, options);
      for (const auto& f : result.files) out << f.string() << "\n";
      for (const auto& r : result.records) {
        if (r.failed) err << "degenerate: " << r.failure << "\n";
      }
      return result.exit_code;
    }
    if (circle->parsed()) {
      const CircleRaster r = rasterize_circle(radius);
      if (as_text) {
        out << r.to_text();
      } else {
        out << "cells " << r.size() << "\n";
        for (const auto& c : r.cells()) out << c.x << " " << c.z << "\n";
      }
      return kExitOk;
    }
    if (oracle->parsed()) return run_oracle(oracle_name, oracle_args, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DegenerateSample& e) {
    err << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace blockmonte
