#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockmonte/estimators.hpp"

namespace blockmonte {

struct ManifestEntry {
  std::string name;
  ExperimentConfig config;
  // Counts-only mode: no sampling, just the closing arithmetic.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> from_counts;
};

struct RunManifest {
  std::string run_id;
  std::vector<ManifestEntry> entries;
  std::filesystem::path output_dir = ".";
  std::set<std::string> formats{"jsonl"};

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Parses the manifest text format:
///
///   run_id = demo            # keys before the first section are run-wide
///   output_dir = out
///   formats = jsonl,csv,svg,txt
///   seed = 7                 # default seed for every section
///
///   [pi-walk]                # one experiment per section
///   variant = pi
///   trials = 10000
///   radius = 11              # any other key is a variant parameter
///
///   [zeta-paper]
///   variant = zeta
///   from_counts = 70,58
///
/// `default_seed` applies when neither the section nor the header sets one.
RunManifest parse_manifest(std::string_view text, MasterSeed default_seed = {});

RunManifest load_manifest(const std::filesystem::path& path, MasterSeed default_seed = {});

/// Parses "A,B" into two counts; throws ConfigError for field "from_counts".
std::pair<std::uint64_t, std::uint64_t> parse_counts(std::string_view text);

struct RunOptions {
  unsigned workers = 1;
  bool timing = false;           // fill wall_ms (makes reports non-reproducible)
  std::size_t svg_max_dots = 20000;
};

struct RunResult {
  std::vector<EstimateRecord> records;  // config order
  std::vector<std::filesystem::path> files;
  int exit_code = 0;  // 0 ok, 1 some record failed
};

/// Runs every entry, then writes <run_id>.jsonl/.csv/.txt and one SVG per
/// sampled pi entry into output_dir. Degenerate samples become failed records
/// (exit code 1); invalid configs throw ConfigError before any file is written.
RunResult run_experiment(const RunManifest& manifest, const RunOptions& options = {});

/// Runs the entries without touching the filesystem.
std::vector<EstimateRecord> run_entries(const RunManifest& manifest, const RunOptions& options = {});

}  // namespace blockmonte
