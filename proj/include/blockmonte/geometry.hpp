#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blockmonte {

/// One block column in the horizontal plane.
struct GridCell {
  std::int64_t x = 0;
  std::int64_t z = 0;

  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// True iff the center of `cell` is within `radius` of the center of cell
/// (0, 0). Boundary inclusive.
bool cell_in_disc(GridCell cell, double radius);

/// Block approximation of a circle: all cells whose centers lie in the disc of
/// the given integer radius about the origin cell.
class CircleRaster {
 public:
  explicit CircleRaster(std::int64_t radius);

  std::int64_t radius() const noexcept { return radius_; }
  bool contains(GridCell cell) const noexcept;
  std::size_t size() const noexcept { return cells_.size(); }

  /// Cells in row-major order (z ascending, then x ascending).
  const std::vector<GridCell>& cells() const noexcept { return cells_; }

  /// Plain-text picture of the square [-R, R]^2: one row per line, north
  /// (largest z) first, '#' for a block and '.' for empty.
  std::string to_text() const;

 private:
  std::int64_t radius_;
  // half_width_[z + R] is the largest |x| inside on row z.
  std::vector<std::int64_t> half_width_;
  std::vector<GridCell> cells_;
};

CircleRaster rasterize_circle(std::int64_t radius);

/// Nearest integer, halves away from zero.
std::int64_t round_half_away(double value);

/// One block per integer column x in [a, b) at height round(f(x + 0.5)).
struct CurveRaster {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<std::int64_t> heights;

  std::int64_t height_at_column(std::int64_t x) const { return heights.at(static_cast<std::size_t>(x - a)); }
  std::vector<GridCell> cells() const;
};

/// Throws InvalidArgument if a >= b and DomainError (with the column) if f is
/// not finite at some column midpoint.
CurveRaster rasterize_curve(const std::function<double(double)>& f, std::int64_t a, std::int64_t b);

inline constexpr double kDefaultWalkSpeed = 4.317;

/// Leg and hypotenuse of an isosceles right triangle walked at constant speed.
struct TriangleCourse {
  std::int64_t leg_blocks = 100;
  double speed_blocks_per_second = kDefaultWalkSpeed;
};

/// Rectangle with sides (short_units, long_units) * unit_blocks; its diagonal
/// is unit_blocks * sqrt(short^2 + long^2). The triangle course is (1, 1).
struct RectangleCourse {
  std::int64_t unit_blocks = 100;
  std::int64_t short_units = 1;
  std::int64_t long_units = 1;
  double speed_blocks_per_second = kDefaultWalkSpeed;
};

struct TraversalTimes {
  double leg_seconds = 0.0;
  double hypotenuse_seconds = 0.0;
};

TraversalTimes traversal_seconds(const TriangleCourse& course);

/// leg_seconds is the time along one unit side (unit_blocks long), so the
/// ratio of the two times is sqrt(short^2 + long^2).
TraversalTimes traversal_seconds(const RectangleCourse& course);

struct PiBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Perimeter/diameter of the inscribed (lower) and circumscribed (upper)
/// regular 6*2^doublings-gons. doublings must be <= 30.
PiBounds archimedes_bounds(int doublings);

/// (i, j) with i <= j and i^2 + j^2 = n, smallest i first; nullopt if none.
std::optional<std::pair<std::uint64_t, std::uint64_t>> two_squares(std::uint64_t n);

bool is_sum_of_two_squares(std::uint64_t n);

}  // namespace blockmonte
