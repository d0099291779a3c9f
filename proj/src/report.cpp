#include "blockmonte/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "blockmonte/errors.hpp"

namespace blockmonte {

namespace {

nlohmann::ordered_json number_or_null(double v, bool failed) {
  if (failed || !std::isfinite(v)) return nullptr;
  return v;
}

double number_from(const nlohmann::json& object, const char* key) {
  if (!object.contains(key)) throw ConfigError(key, "missing");
  const auto& v = object.at(key);
  if (v.is_null()) return 0.0;
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%#.3g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json to_json(const EstimateRecord& r, std::string_view run_id) {
  nlohmann::ordered_json j;
  j["run_id"] = run_id;
  j["variant"] = to_string(r.variant);
  j["seed"] = r.seed.value;
  j["trials"] = r.trials_used;
  j["success_count"] = r.success_count ? nlohmann::ordered_json(*r.success_count) : nlohmann::ordered_json();
  j["estimate"] = number_or_null(r.estimate, r.failed);
  j["stderr"] = number_or_null(r.std_error, r.failed);
  j["ci_low"] = number_or_null(r.ci_low, r.failed);
  j["ci_high"] = number_or_null(r.ci_high, r.failed);
  j["reference"] = number_or_null(r.reference, r.failed);
  j["rel_error_pct"] = number_or_null(r.relative_error_percent, r.failed);
  j["params"] = r.params;
  j["wall_ms"] = r.wall_ms;
  j["status"] = r.failed ? "failed" : "ok";
  if (r.failed) j["error"] = r.failure;
  if (r.derived) {
    j["derived"] = {{"label", r.derived->label},
                    {"estimate", number_or_null(r.derived->estimate, false)},
                    {"stderr", number_or_null(r.derived->std_error, false)},
                    {"reference", number_or_null(r.derived->reference, false)},
                    {"rel_error_pct", number_or_null(r.derived->relative_error_percent, false)}};
  }
  if (!r.flags.empty()) j["flags"] = r.flags;
  return j;
}

EstimateRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("record", "expected a JSON object");
  EstimateRecord r;
  try {
    r.variant = parse_variant(j.at("variant").get<std::string>());
    r.seed = MasterSeed{j.at("seed").get<std::uint64_t>()};
    r.trials_used = j.at("trials").get<std::uint64_t>();
    if (!j.at("success_count").is_null()) r.success_count = j.at("success_count").get<std::uint64_t>();
    r.params = j.at("params").get<ParamMap>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.failed = j.at("status").get<std::string>() == "failed";
    if (r.failed) r.failure = j.at("error").get<std::string>();
    if (j.contains("flags")) r.flags = j.at("flags").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError("record", err.what());
  }
  r.estimate = number_from(j, "estimate");
  r.std_error = number_from(j, "stderr");
  r.ci_low = number_from(j, "ci_low");
  r.ci_high = number_from(j, "ci_high");
  r.reference = number_from(j, "reference");
  r.relative_error_percent = number_from(j, "rel_error_pct");
  if (j.contains("derived")) {
    const auto& d = j.at("derived");
    r.derived = DerivedEstimate{d.at("label").get<std::string>(), number_from(d, "estimate"),
                                number_from(d, "stderr"), number_from(d, "reference"),
                                number_from(d, "rel_error_pct")};
  }
  return r;
}

std::string to_jsonl_line(const EstimateRecord& record, std::string_view run_id) {
  return to_json(record, run_id).dump() + "\n";
}

std::string csv_header() {
  return "run_id,variant,seed,trials,success_count,estimate,stderr,ci_low,ci_high,reference,"
         "rel_error_pct,status,derived_label,derived_estimate,params,wall_ms\n";
}

std::string to_csv_row(const EstimateRecord& r, std::string_view run_id) {
  auto num = [&r](double v) { return r.failed ? std::string() : format_real(v); };
  std::string params;
  for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + v;
  std::ostringstream row;
  row << csv_escape(std::string(run_id)) << ',' << to_string(r.variant) << ',' << r.seed.value << ','
      << r.trials_used << ',' << (r.success_count ? std::to_string(*r.success_count) : "") << ','
      << num(r.estimate) << ',' << num(r.std_error) << ',' << num(r.ci_low) << ',' << num(r.ci_high) << ','
      << num(r.reference) << ',' << num(r.relative_error_percent) << ',' << (r.failed ? "failed" : "ok") << ','
      << (r.derived ? r.derived->label : "") << ',' << (r.derived ? format_real(r.derived->estimate) : "") << ','
      << csv_escape(params) << ',' << format_real(r.wall_ms) << '\n';
  return row.str();
}

std::string format_caption_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", 6, value);
  std::string s = buf;
  if (s.find_first_of("eE") != std::string::npos) return s;
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    s += '.';
    dot = s.size() - 1;
  }
  while (s.size() - dot - 1 < 3) s += '0';
  return s;
}

std::string summary_line(const EstimateRecord& r) {
  std::ostringstream line;
  line << to_string(r.variant) << " seed=" << r.seed.value << ": ";
  if (r.failed) {
    line << "FAILED (" << r.failure << ")";
    return line.str();
  }
  const std::string n = r.success_count ? std::to_string(*r.success_count) : "";
  const std::string t = std::to_string(r.trials_used);
  switch (r.variant) {
    case Variant::pi: line << "4 * " << n << "/" << t << " = "; break;
    case Variant::e:
    case Variant::zeta: line << t << "/" << n << " = "; break;
    default: line << "estimate = "; break;
  }
  line << format_caption_number(r.estimate) << " +/- " << format_caption_number(r.std_error)
       << " (reference " << format_caption_number(r.reference) << ", error " << percent(r.relative_error_percent) << "%)";
  if (r.derived) {
    line << "; " << r.derived->label << " ~ " << format_caption_number(r.derived->estimate) << " (error "
         << percent(r.derived->relative_error_percent) << "%)";
  }
  return line.str();
}

std::string render_scatter_svg(std::span<const ScatterPoint> dots, const CircleRaster& raster,
                               std::optional<ScatterCounts> counts) {
  if (dots.empty()) throw InvalidArgument("emit_scatter: no dots to draw");
  if (!counts) {
    ScatterCounts c{0, dots.size()};
    for (const auto& d : dots) c.inside += d.inside ? 1 : 0;
    counts = c;
  }
  constexpr double kPixels = 600.0;
  constexpr double kMargin = 10.0;
  const auto r = raster.radius();
  const double lo = -static_cast<double>(r);
  const double side = 2.0 * static_cast<double>(r) + 1.0;
  const double scale = kPixels / side;
  auto px = [&](double x) { return kMargin + (x - lo) * scale; };
  auto py = [&](double z) { return kMargin + (lo + side - z) * scale; };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPixels + 2 * kMargin << "\" height=\""
      << kPixels + 2 * kMargin + 30 << "\">\n";
  svg << "<style>.block{fill:#9bd59b;stroke:none}.in{fill:#1f77b4}.out{fill:#d62728}</style>\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPixels << "\" height=\"" << kPixels
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<g id=\"raster\">\n";
  for (const auto& cell : raster.cells()) {
    const bool boundary = !raster.contains({cell.x + 1, cell.z}) || !raster.contains({cell.x - 1, cell.z}) ||
                          !raster.contains({cell.x, cell.z + 1}) || !raster.contains({cell.x, cell.z - 1});
    if (!boundary) continue;
    svg << "<rect class=\"block\" x=\"" << px(static_cast<double>(cell.x)) << "\" y=\""
        << py(static_cast<double>(cell.z) + 1.0) << "\" width=\"" << scale << "\" height=\"" << scale << "\"/>\n";
  }
  svg << "</g>\n<g id=\"dots\">\n";
  const double dot_radius = std::max(0.8, std::min(3.0, scale / 4.0));
  for (const auto& d : dots) {
    svg << "<circle class=\"" << (d.inside ? "in" : "out") << "\" cx=\"" << px(d.position.x) << "\" cy=\""
        << py(d.position.z) << "\" r=\"" << dot_radius << "\"/>\n";
  }
  svg << "</g>\n";
  const double estimate = counts->total == 0 ? 0.0
                                             : 4.0 * static_cast<double>(counts->inside) /
                                                   static_cast<double>(counts->total);
  svg << "<text x=\"" << kMargin << "\" y=\"" << kPixels + 2 * kMargin + 20
      << "\" font-family=\"sans-serif\" font-size=\"16\">4 · " << counts->inside << "/" << counts->total
      << " = " << format_caption_number(estimate) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void emit_scatter(std::span<const ScatterPoint> dots, const CircleRaster& raster,
                  const std::filesystem::path& path, std::optional<ScatterCounts> counts) {
  const std::string svg = render_scatter_svg(dots, raster, counts);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::filesystem::filesystem_error("emit_scatter: cannot open for writing", path,
                                            std::make_error_code(std::errc::io_error));
  }
  out << svg;
  if (!out) {
    throw std::filesystem::filesystem_error("emit_scatter: write failed", path,
                                            std::make_error_code(std::errc::io_error));
  }
}

void emit_scatter(std::span<const GridCell> death_cells, const CircleRaster& raster,
                  const std::filesystem::path& path, std::optional<ScatterCounts> counts) {
  std::vector<ScatterPoint> dots;
  dots.reserve(death_cells.size());
  for (const auto& c : death_cells) {
    dots.push_back({{static_cast<double>(c.x) + 0.5, static_cast<double>(c.z) + 0.5}, raster.contains(c)});
  }
  emit_scatter(dots, raster, path, counts);
}

}  // namespace blockmonte
