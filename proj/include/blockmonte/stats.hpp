#pragma once

#include <cstdint>

namespace blockmonte {

/// Published values, stored as literals so they stay independent of the code
/// they check.
struct ReferenceConstants {
  double sqrt2 = 1.4142135623730950488;
  double pi = 3.1415926535897932385;
  double e = 2.7182818284590452354;
  double zeta3 = 1.2020569031595942854;
  double sec1_plus_tan1 = 3.4082234423358247;  // sum of A_n/n!, cross-checked in tests
};

inline constexpr ReferenceConstants kReference{};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion. Always within [0, 1]
/// and contains successes/trials.
Interval wilson_ci(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// First-order delta-method standard error of trials/successes.
/// Throws DegenerateSample when successes == 0.
double ratio_stderr(std::uint64_t successes, std::uint64_t trials);

/// Rounds to `digits` significant digits.
double round_significant(double value, int digits);

/// 100 * |estimate - reference| / |reference|, rounded to 3 significant
/// digits. Throws InvalidArgument for a zero reference.
double relative_error(double estimate, double reference);

}  // namespace blockmonte
