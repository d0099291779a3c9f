#include "blockmonte/manifest.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "blockmonte/errors.hpp"
#include "blockmonte/report.hpp"

namespace blockmonte {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::uint64_t parse_u64(const std::string& field, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  double d = 0.0;
  auto [dptr, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (dec == std::errc() && dptr == text.data() + text.size() && d >= 0.0 && d == std::floor(d) && d < 0x1.0p64) {
    return static_cast<std::uint64_t>(d);
  }
  throw ConfigError(field, "expected a non-negative integer, got \"" + text + "\"");
}

std::set<std::string> parse_formats(const std::string& text) {
  std::set<std::string> formats;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item != "jsonl" && item != "csv" && item != "svg" && item != "txt") {
      throw ConfigError("formats", "unknown format \"" + item + "\"");
    }
    formats.insert(item);
  }
  return formats;
}

struct PendingEntry {
  std::string name;
  std::optional<std::string> variant;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> from_counts;
  ParamMap params;
};

EstimateRecord failed_record(const ManifestEntry& entry, const std::string& message) {
  EstimateRecord r;
  r.variant = entry.config.variant;
  r.seed = entry.config.seed;
  r.trials_used = entry.config.trials;
  r.params = entry.config.params;
  r.failed = true;
  r.failure = message;
  return r;
}

std::string file_safe(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    throw std::filesystem::filesystem_error("cannot write report", path, std::make_error_code(std::errc::io_error));
  }
}

}  // namespace

void RunManifest::validate() const {
  if (run_id.empty()) throw ConfigError("run_id", "must be non-empty");
  if (run_id.find_first_of("/\\") != std::string::npos) throw ConfigError("run_id", "must not contain path separators");
  if (formats.empty()) throw ConfigError("formats", "at least one format is required");
  for (const auto& f : formats) {
    if (f != "jsonl" && f != "csv" && f != "svg" && f != "txt") throw ConfigError("formats", "unknown format \"" + f + "\"");
  }
  if (entries.empty()) throw ConfigError("entries", "manifest has no experiments");
  for (const auto& e : entries) {
    if (e.config.trials < 1) throw ConfigError("trials", "must be >= 1 (section [" + e.name + "])");
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_counts(std::string_view text) {
  const std::string s = trim(text);
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("from_counts", "expected A,B");
  return {parse_u64("from_counts", trim(s.substr(0, comma))), parse_u64("from_counts", trim(s.substr(comma + 1)))};
}

RunManifest parse_manifest(std::string_view text, MasterSeed default_seed) {
  RunManifest manifest;
  manifest.run_id.clear();
  std::optional<std::uint64_t> header_seed;
  std::vector<PendingEntry> pending;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find_first_of("#;"); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("section", "line " + std::to_string(line_no) + ": missing ']'");
      pending.push_back({trim(std::string_view(line).substr(1, line.size() - 2)), {}, {}, {}, {}, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (pending.empty()) {
      if (key == "run_id") {
        manifest.run_id = value;
      } else if (key == "output_dir") {
        manifest.output_dir = value;
      } else if (key == "formats") {
        manifest.formats = parse_formats(value);
      } else if (key == "seed") {
        header_seed = parse_u64("seed", value);
      } else {
        throw ConfigError(key, "unknown run-wide key");
      }
      continue;
    }
    PendingEntry& e = pending.back();
    if (key == "variant") {
      e.variant = value;
    } else if (key == "seed") {
      e.seed = parse_u64("seed", value);
    } else if (key == "trials") {
      e.trials = parse_u64("trials", value);
    } else if (key == "from_counts") {
      e.from_counts = parse_counts(value);
    } else {
      e.params[key] = value;
    }
  }

  for (auto& p : pending) {
    if (!p.variant) throw ConfigError("variant", "missing in section [" + p.name + "]");
    ManifestEntry entry;
    entry.name = p.name;
    entry.config.variant = parse_variant(*p.variant);
    entry.config.seed = MasterSeed{p.seed.value_or(header_seed.value_or(default_seed.value))};
    entry.config.trials = p.trials.value_or(10000);
    entry.config.params = std::move(p.params);
    entry.from_counts = p.from_counts;
    manifest.entries.push_back(std::move(entry));
  }
  manifest.validate();
  return manifest;
}

RunManifest load_manifest(const std::filesystem::path& path, MasterSeed default_seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("manifest", "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_manifest(text.str(), default_seed);
}

std::vector<EstimateRecord> run_entries(const RunManifest& manifest, const RunOptions& options) {
  manifest.validate();
  std::vector<EstimateRecord> records;
  records.reserve(manifest.entries.size());
  const ExecutionOptions exec{options.workers};
  for (const auto& entry : manifest.entries) {
    const auto start = std::chrono::steady_clock::now();
    EstimateRecord record;
    try {
      if (entry.from_counts) {
        record = estimate_from_counts(entry.config.variant, entry.from_counts->first, entry.from_counts->second,
                                      entry.config.params);
        record.seed = entry.config.seed;
      } else {
        record = estimate(entry.config, exec);
      }
    } catch (const DegenerateSample& err) {
      record = failed_record(entry, err.what());
    }
    if (options.timing) {
      record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    records.push_back(std::move(record));
  }
  return records;
}

RunResult run_experiment(const RunManifest& manifest, const RunOptions& options) {
  RunResult result;
  result.records = run_entries(manifest, options);
  std::filesystem::create_directories(manifest.output_dir);
  const auto base = manifest.output_dir / manifest.run_id;

  if (manifest.formats.count("jsonl")) {
    std::string text;
    for (const auto& r : result.records) text += to_jsonl_line(r, manifest.run_id);
    result.files.push_back(base.string() + ".jsonl");
    write_file(result.files.back(), text);
  }
  if (manifest.formats.count("csv")) {
    std::string text = csv_header();
    for (const auto& r : result.records) text += to_csv_row(r, manifest.run_id);
    result.files.push_back(base.string() + ".csv");
    write_file(result.files.back(), text);
  }
  if (manifest.formats.count("txt")) {
    std::string text;
    for (const auto& r : result.records) text += summary_line(r) + "\n";
    result.files.push_back(base.string() + ".txt");
    write_file(result.files.back(), text);
  }
  if (manifest.formats.count("svg")) {
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
      const auto& entry = manifest.entries[i];
      const auto& record = result.records[i];
      if (entry.config.variant != Variant::pi || entry.from_counts || record.failed) continue;
      const auto dots = pi_sample_points(entry.config, options.svg_max_dots);
      const auto raster = rasterize_circle(std::stoll(record.params.at("radius")));
      const std::filesystem::path path =
          manifest.output_dir / (manifest.run_id + "-" + std::to_string(i) + "-" + file_safe(entry.name) + ".svg");
      emit_scatter(dots, raster, path, ScatterCounts{*record.success_count, record.trials_used});
      result.files.push_back(path);
    }
  }
  for (const auto& r : result.records) {
    if (r.failed) result.exit_code = 1;
  }
  return result;
}

}  // namespace blockmonte
