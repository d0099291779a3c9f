#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockmonte/mechanics.hpp"
#include "blockmonte/rng.hpp"

namespace blockmonte {

enum class Variant { sqrt2, pi, e, zeta, sec_tan, integral };

std::string_view to_string(Variant variant);

/// Throws ConfigError("variant", ...) for an unknown name.
Variant parse_variant(std::string_view name);

using ParamMap = std::map<std::string, std::string>;

struct ExperimentConfig {
  Variant variant = Variant::pi;
  MasterSeed seed{};
  std::uint64_t trials = 10000;
  ParamMap params;
};

/// Secondary quantity reported next to an estimate, e.g. pi^2 = 6 * zeta(2).
struct DerivedEstimate {
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  double reference = 0.0;
  double relative_error_percent = 0.0;

  friend bool operator==(const DerivedEstimate&, const DerivedEstimate&) = default;
};

struct EstimateRecord {
  Variant variant = Variant::pi;
  double estimate = 0.0;
  std::uint64_t trials_used = 0;
  std::optional<std::uint64_t> success_count;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double reference = 0.0;
  double relative_error_percent = 0.0;
  MasterSeed seed{};
  ParamMap params;  // every effective parameter, defaults filled in
  std::optional<DerivedEstimate> derived;
  std::vector<std::string> flags;
  bool failed = false;
  std::string failure;
  double wall_ms = 0.0;

  friend bool operator==(const EstimateRecord&, const EstimateRecord&) = default;
};

struct ExecutionOptions {
  unsigned workers = 1;
};

/// Hopper-timed walk along leg and hypotenuse; estimate = hyp items / leg items.
EstimateRecord estimate_sqrt2(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Death cells in the square; estimate = 4 * inside / total.
EstimateRecord estimate_pi(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Dropper permutations; estimate = permutations / derangements.
EstimateRecord estimate_e(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Random m-tuples; estimate = tuples / coprime tuples.
EstimateRecord estimate_zeta(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Sum over n <= max_size of the fraction of alternating permutations of [n].
EstimateRecord estimate_sec_tan(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Signed hit-or-miss integration inside the curve's bounding box.
EstimateRecord estimate_integral(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Dispatches on config.variant.
EstimateRecord estimate(const ExperimentConfig& config, const ExecutionOptions& options = {});

/// Pure arithmetic on recorded counts, numerator first:
///   sqrt2 (hypotenuse items, leg items); pi (inside, total);
///   e (permutations, derangements); zeta (tuples, coprime tuples).
/// `params` may carry m for zeta. Throws DegenerateSample on a zero
/// denominator and InvalidArgument for inconsistent counts.
EstimateRecord estimate_from_counts(Variant variant, std::uint64_t numerator, std::uint64_t denominator,
                                    const ParamMap& params = {});

struct ScatterPoint {
  Vec2 position;
  bool inside = false;
};

/// Regenerates the first `limit` sample points of a pi run (same streams as
/// estimate_pi), for plotting.
std::vector<ScatterPoint> pi_sample_points(const ExperimentConfig& config, std::size_t limit);

/// Side length of the pi arena's square, in cells.
double pi_square_side(const ExperimentConfig& config);

}  // namespace blockmonte
