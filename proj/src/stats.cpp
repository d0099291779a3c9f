#include "blockmonte/stats.hpp"

#include <algorithm>
#include <cmath>

#include "blockmonte/errors.hpp"

namespace blockmonte {

Interval wilson_ci(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw InvalidArgument("wilson_ci: trials must be >= 1");
  if (successes > trials) throw InvalidArgument("wilson_ci: successes exceed trials");
  if (!(z > 0.0)) throw InvalidArgument("wilson_ci: z must be positive");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

double ratio_stderr(std::uint64_t successes, std::uint64_t trials) {
  if (successes == 0) throw DegenerateSample("ratio_stderr: no successes");
  if (successes > trials) throw InvalidArgument("ratio_stderr: successes exceed trials");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  // Var(1/p^) ~ Var(p^) / p^4.
  return std::sqrt(p * (1.0 - p) / n) / (p * p);
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(value))));
  const double scale = std::pow(10.0, digits - 1 - exponent);
  return std::round(value * scale) / scale;
}

double relative_error(double estimate, double reference) {
  if (reference == 0.0) throw InvalidArgument("relative_error: reference must be non-zero");
  return round_significant(100.0 * std::fabs(estimate - reference) / std::fabs(reference), 3);
}

}  // namespace blockmonte
