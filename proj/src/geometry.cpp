#include "blockmonte/geometry.hpp"

#include <cmath>
#include <string>

#include "blockmonte/errors.hpp"

namespace blockmonte {

bool cell_in_disc(GridCell cell, double radius) {
  const auto dx = static_cast<double>(cell.x);
  const auto dz = static_cast<double>(cell.z);
  return dx * dx + dz * dz <= radius * radius;
}

CircleRaster::CircleRaster(std::int64_t radius) : radius_(radius) {
  if (radius < 1) throw InvalidArgument("rasterize_circle: radius must be >= 1");
  const std::int64_t r2 = radius * radius;
  half_width_.resize(static_cast<std::size_t>(2 * radius + 1));
  for (std::int64_t z = -radius; z <= radius; ++z) {
    std::int64_t w = radius;
    while (w * w + z * z > r2) --w;
    half_width_[static_cast<std::size_t>(z + radius)] = w;
    for (std::int64_t x = -w; x <= w; ++x) cells_.push_back({x, z});
  }
}

bool CircleRaster::contains(GridCell cell) const noexcept {
  if (cell.z < -radius_ || cell.z > radius_) return false;
  const auto w = half_width_[static_cast<std::size_t>(cell.z + radius_)];
  return cell.x >= -w && cell.x <= w;
}

std::string CircleRaster::to_text() const {
  const auto side = static_cast<std::size_t>(2 * radius_ + 1);
  std::string out;
  out.reserve(side * (side + 1));
  for (std::int64_t z = radius_; z >= -radius_; --z) {
    for (std::int64_t x = -radius_; x <= radius_; ++x) out += contains({x, z}) ? '#' : '.';
    out += '\n';
  }
  return out;
}

CircleRaster rasterize_circle(std::int64_t radius) { return CircleRaster(radius); }

std::int64_t round_half_away(double value) { return static_cast<std::int64_t>(std::round(value)); }

std::vector<GridCell> CurveRaster::cells() const {
  std::vector<GridCell> out;
  out.reserve(heights.size());
  for (std::size_t i = 0; i < heights.size(); ++i) {
    out.push_back({a + static_cast<std::int64_t>(i), heights[i]});
  }
  return out;
}

CurveRaster rasterize_curve(const std::function<double(double)>& f, std::int64_t a, std::int64_t b) {
  if (a >= b) throw InvalidArgument("rasterize_curve: need a < b");
  CurveRaster raster{a, b, {}};
  raster.heights.reserve(static_cast<std::size_t>(b - a));
  for (std::int64_t x = a; x < b; ++x) {
    const double y = f(static_cast<double>(x) + 0.5);
    if (!std::isfinite(y) || std::fabs(y) >= 0x1.0p62) {
      throw DomainError(x, "rasterize_curve: f is not finite at column " + std::to_string(x));
    }
    raster.heights.push_back(round_half_away(y));
  }
  return raster;
}

TraversalTimes traversal_seconds(const TriangleCourse& course) {
  return traversal_seconds(RectangleCourse{course.leg_blocks, 1, 1, course.speed_blocks_per_second});
}

TraversalTimes traversal_seconds(const RectangleCourse& course) {
  if (course.unit_blocks < 1) throw InvalidArgument("course: leg length must be >= 1 block");
  if (!(course.speed_blocks_per_second > 0.0) || !std::isfinite(course.speed_blocks_per_second)) {
    throw InvalidArgument("course: speed must be positive");
  }
  if (course.short_units < 0 || course.long_units < 1) {
    throw InvalidArgument("course: rectangle sides must be non-negative with a positive long side");
  }
  const auto unit = static_cast<double>(course.unit_blocks);
  const auto s = static_cast<double>(course.short_units);
  const auto l = static_cast<double>(course.long_units);
  const double v = course.speed_blocks_per_second;
  const double diagonal = course.short_units == course.long_units
                              ? unit * s * std::sqrt(2.0)
                              : unit * std::sqrt(s * s + l * l);
  return {unit / v, diagonal / v};
}

PiBounds archimedes_bounds(int doublings) {
  if (doublings < 0 || doublings > 30) {
    throw InvalidArgument("archimedes_bounds: doublings must lie in [0, 30]");
  }
  // Hexagon: circumscribed perimeter/diameter 2*sqrt(3), inscribed 3.
  double circumscribed = 2.0 * std::sqrt(3.0);
  double inscribed = 3.0;
  for (int i = 0; i < doublings; ++i) {
    circumscribed = 2.0 * circumscribed * inscribed / (circumscribed + inscribed);
    inscribed = std::sqrt(circumscribed * inscribed);
  }
  return {inscribed, circumscribed};
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> two_squares(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("two_squares: n must be >= 1");
  for (std::uint64_t i = 0; 2 * i * i <= n; ++i) {
    const std::uint64_t rest = n - i * i;
    auto j = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rest)));
    while (j * j > rest) --j;
    while ((j + 1) * (j + 1) <= rest) ++j;
    if (j * j == rest) return std::pair{i, j};
  }
  return std::nullopt;
}

bool is_sum_of_two_squares(std::uint64_t n) { return two_squares(n).has_value(); }

}  // namespace blockmonte
