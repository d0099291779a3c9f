#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "blockmonte/estimators.hpp"
#include "blockmonte/geometry.hpp"

namespace blockmonte {

// JSON Lines schema, one object per record:
//   run_id, variant, seed, trials, success_count, estimate, stderr, ci_low,
//   ci_high, reference, rel_error_pct, params, wall_ms, status
// plus "derived", "flags" and "error" when present. Non-finite numbers and
// the numbers of a failed record are written as null.
nlohmann::ordered_json to_json(const EstimateRecord& record, std::string_view run_id);

/// Inverse of to_json. Throws ConfigError naming the first bad field.
EstimateRecord record_from_json(const nlohmann::json& object);

std::string to_jsonl_line(const EstimateRecord& record, std::string_view run_id);

std::string csv_header();
std::string to_csv_row(const EstimateRecord& record, std::string_view run_id);

/// One human-readable line, e.g. "pi ~ 4 * 508/619 = 3.28271 (error 4.49%)".
std::string summary_line(const EstimateRecord& record);

/// 6 significant digits, trailing zeros trimmed but at least 3 decimals.
std::string format_caption_number(double value);

struct ScatterCounts {
  std::uint64_t inside = 0;
  std::uint64_t total = 0;
};

/// SVG picture of a pi run: the square, the raster circle's boundary blocks,
/// one dot per sample (class "in" or "out") and a caption
/// "4 · inside/total = estimate". `counts` overrides the caption counts,
/// which otherwise come from the dots. Throws InvalidArgument for no dots.
std::string render_scatter_svg(std::span<const ScatterPoint> dots, const CircleRaster& raster,
                               std::optional<ScatterCounts> counts = std::nullopt);

/// Writes render_scatter_svg to `path`; throws std::filesystem::filesystem_error.
void emit_scatter(std::span<const ScatterPoint> dots, const CircleRaster& raster,
                  const std::filesystem::path& path, std::optional<ScatterCounts> counts = std::nullopt);

/// Death-cell form: each dot sits at the cell center and is inside iff the
/// raster contains its cell.
void emit_scatter(std::span<const GridCell> death_cells, const CircleRaster& raster,
                  const std::filesystem::path& path, std::optional<ScatterCounts> counts = std::nullopt);

}  // namespace blockmonte
