#include "blockmonte/estimators.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "blockmonte/combinatorics.hpp"
#include "blockmonte/errors.hpp"
#include "blockmonte/expression.hpp"
#include "blockmonte/geometry.hpp"
#include "blockmonte/numtheory.hpp"
#include "blockmonte/stats.hpp"

namespace blockmonte {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr int kMaxTupleSize = 64;

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Reads variant parameters, rejects unknown keys and records the effective
// value of every parameter (defaults included) for the report.
class ParamReader {
 public:
  ParamReader(const ParamMap& raw, Variant variant, std::initializer_list<std::string_view> allowed)
      : raw_(raw) {
    for (const auto& [key, value] : raw) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(key, "unknown parameter for variant " + std::string(to_string(variant)));
      }
    }
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t min,
                       std::int64_t max) {
    std::int64_t value = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) value = parse_integer(key, it->second);
    if (value < min || value > max) {
      throw ConfigError(key, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    echo[key] = std::to_string(value);
    return value;
  }

  double real(const std::string& key, double fallback) {
    double value = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) value = parse_real(key, it->second);
    if (!std::isfinite(value)) throw ConfigError(key, "must be a finite number");
    echo[key] = format_real(value);
    return value;
  }

  std::string choice(const std::string& key, std::string fallback,
                     std::initializer_list<std::string_view> options) {
    std::string value = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) value = it->second;
    if (std::find(options.begin(), options.end(), value) == options.end()) {
      std::string list;
      for (auto o : options) list += (list.empty() ? "" : "|") + std::string(o);
      throw ConfigError(key, "must be one of " + list);
    }
    echo[key] = value;
    return value;
  }

  std::string text(const std::string& key, std::string fallback) {
    std::string value = fallback;
    if (auto it = raw_.find(key); it != raw_.end()) value = it->second;
    echo[key] = value;
    return value;
  }

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  ParamMap echo;

 private:
  static std::int64_t parse_integer(const std::string& key, const std::string& text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size()) return v;
    const double d = parse_real(key, text);
    if (d != std::floor(d) || std::fabs(d) > 0x1.0p62) throw ConfigError(key, "must be an integer");
    return static_cast<std::int64_t>(d);
  }

  static double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError(key, "cannot parse \"" + text + "\" as a number");
    }
    return v;
  }

  const ParamMap& raw_;
};

void check_trials(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials", "must be >= 1");
}

// Runs fn(index, acc) for every trial. Each worker owns a contiguous block of
// indices and its own accumulator; blocks merge in index order. Accumulators
// hold integer counts, so the result does not depend on `workers`.
template <class Acc, class Fn>
Acc run_trials(std::uint64_t trials, unsigned workers, const Fn& fn) {
  const std::uint64_t n_workers = std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(trials, 1));
  if (n_workers == 1) {
    Acc acc{};
    for (std::uint64_t i = 0; i < trials; ++i) fn(i, acc);
    return acc;
  }
  std::vector<Acc> partial(n_workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::uint64_t w = 0; w < n_workers; ++w) {
      const std::uint64_t begin = trials * w / n_workers;
      const std::uint64_t end = trials * (w + 1) / n_workers;
      pool.emplace_back([&fn, &partial, w, begin, end] {
        for (std::uint64_t i = begin; i < end; ++i) fn(i, partial[w]);
      });
    }
  }
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

struct Count {
  std::uint64_t hits = 0;
  Count& operator+=(const Count& o) {
    hits += o.hits;
    return *this;
  }
};

EstimateRecord base_record(const ExperimentConfig& config, ParamMap echo) {
  EstimateRecord r;
  r.variant = config.variant;
  r.seed = config.seed;
  r.trials_used = config.trials;
  r.params = std::move(echo);
  return r;
}

void finish(EstimateRecord& r) {
  r.relative_error_percent = relative_error(round_significant(r.estimate, 6), r.reference);
  if (r.derived) {
    r.derived->relative_error_percent =
        relative_error(round_significant(r.derived->estimate, 6), r.derived->reference);
  }
}

// estimate = scale * trials / successes with a Wilson interval mapped through.
void fill_inverse_ratio(EstimateRecord& r, std::uint64_t successes, std::uint64_t trials, double scale) {
  if (successes == 0) throw DegenerateSample(std::string(to_string(r.variant)) + ": zero successes, no estimate");
  r.success_count = successes;
  r.estimate = scale * static_cast<double>(trials) / static_cast<double>(successes);
  r.std_error = scale * ratio_stderr(successes, trials);
  const Interval ci = wilson_ci(successes, trials, kZ95);
  r.ci_low = scale / ci.high;
  r.ci_high = scale / ci.low;
}

// estimate = scale * successes / trials.
void fill_proportion(EstimateRecord& r, std::uint64_t successes, std::uint64_t trials, double scale) {
  r.success_count = successes;
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  r.estimate = scale * p;
  r.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  const Interval ci = wilson_ci(successes, trials, kZ95);
  r.ci_low = scale * ci.low;
  r.ci_high = scale * ci.high;
}

// ---- sqrt(n) ---------------------------------------------------------------

struct HopperTally {
  std::uint64_t hyp = 0;
  std::uint64_t leg = 0;
  unsigned __int128 hyp_sq = 0;
  unsigned __int128 leg_sq = 0;
  unsigned __int128 cross = 0;

  HopperTally& operator+=(const HopperTally& o) {
    hyp += o.hyp;
    leg += o.leg;
    hyp_sq += o.hyp_sq;
    leg_sq += o.leg_sq;
    cross += o.cross;
    return *this;
  }
};

void fill_sqrt_from_counts(EstimateRecord& r, std::uint64_t hyp, std::uint64_t leg, std::uint64_t trials) {
  if (leg == 0) throw DegenerateSample("sqrt2: degenerate course, the leg took less than one hopper period");
  r.estimate = static_cast<double>(hyp) / static_cast<double>(leg);
  r.success_count = leg;
  // Each measured duration lies in [count, count + 1) periods.
  r.ci_low = static_cast<double>(hyp) / static_cast<double>(leg + trials);
  r.ci_high = static_cast<double>(hyp + trials) / static_cast<double>(leg);
}

// ---- pi --------------------------------------------------------------------

enum class PiSampler { uniform_ideal, slime_walk, slime_walk_drift };

struct PiSetup {
  PiSampler sampler = PiSampler::uniform_ideal;
  bool raster_mode = true;
  SlimeArena arena;
  std::optional<CircleRaster> raster;
  ParamMap echo;

  Vec2 sample(RngStream& stream) const {
    if (sampler == PiSampler::uniform_ideal) {
      const double lo = arena.lower();
      const double w = arena.upper() - lo;
      const double x = lo + w * stream.next_unit();
      const double z = lo + w * stream.next_unit();
      return {x, z};
    }
    return slime_walk(arena, stream).position;
  }

  bool inside(Vec2 p) const {
    if (raster_mode) return raster->contains(arena.cell_of(p));
    // Disc inscribed in the square, centered on the origin cell's center.
    const double r = static_cast<double>(arena.half_width) + 0.5;
    const double dx = p.x - 0.5;
    const double dz = p.z - 0.5;
    return dx * dx + dz * dz <= r * r;
  }
};

PiSetup pi_setup(const ExperimentConfig& config) {
  ParamReader in(config.params, Variant::pi,
                 {"radius", "sampler_mode", "raster_mode", "step_cells", "turn_probability",
                  "kill_probability", "drift_x", "drift_z"});
  PiSetup s;
  s.arena.half_width = in.integer("radius", 11, 1, 1'000'000);
  const std::string sampler =
      in.choice("sampler_mode", "slime_walk", {"uniform_ideal", "slime_walk", "slime_walk_drift"});
  s.sampler = sampler == "uniform_ideal" ? PiSampler::uniform_ideal
              : sampler == "slime_walk"  ? PiSampler::slime_walk
                                         : PiSampler::slime_walk_drift;
  s.raster_mode = in.choice("raster_mode", "raster", {"raster", "exact_disc"}) == "raster";
  if (s.sampler != PiSampler::uniform_ideal) {
    const bool drift = s.sampler == PiSampler::slime_walk_drift;
    s.arena.step_cells = in.real("step_cells", 1.0);
    s.arena.turn_probability = in.real("turn_probability", 0.1);
    s.arena.kill_probability = in.real("kill_probability", 0.01);
    // South-east in (east, north) coordinates.
    s.arena.drift = {in.real("drift_x", drift ? 0.3 : 0.0), in.real("drift_z", drift ? -0.3 : 0.0)};
    try {
      s.arena.validate();
    } catch (const InvalidArgument& err) {
      throw ConfigError("slime", err.what());
    }
  }
  if (s.raster_mode) s.raster = rasterize_circle(s.arena.half_width);
  s.echo = std::move(in.echo);
  return s;
}

// ---- zeta ------------------------------------------------------------------

struct ZetaSetup {
  int m = 3;
  bool uniform = true;
  std::uint64_t value_bound = 1'000'000;
  RandomTickScheduler sched;
  double growth_probability = 1.0 / 3.0;
  ParamMap echo;
};

ZetaSetup zeta_setup(const ExperimentConfig& config) {
  ParamReader in(config.params, Variant::zeta,
                 {"m", "sampler_mode", "value_bound", "growth_probability", "speed_multiplier",
                  "picks_per_tick", "cube_cells"});
  ZetaSetup s;
  s.m = static_cast<int>(in.integer("m", 3, 2, kMaxTupleSize));
  s.uniform = in.choice("sampler_mode", "uniform", {"uniform", "random_tick"}) == "uniform";
  if (s.uniform) {
    s.value_bound = static_cast<std::uint64_t>(in.integer("value_bound", 1'000'000, 2, std::int64_t{1} << 62));
  } else {
    s.growth_probability = in.real("growth_probability", 1.0 / 3.0);
    if (!(s.growth_probability > 0.0 && s.growth_probability <= 1.0)) {
      throw ConfigError("growth_probability", "must lie in (0, 1]");
    }
    s.sched.speed_multiplier = static_cast<std::uint64_t>(in.integer("speed_multiplier", 1, 1, 1 << 20));
    s.sched.picks_per_tick = static_cast<std::uint64_t>(in.integer("picks_per_tick", 3, 1, 1 << 20));
    s.sched.cube_cells = static_cast<std::uint64_t>(in.integer("cube_cells", 4096, 1, 1 << 30));
    try {
      s.sched.validate();
    } catch (const InvalidArgument& err) {
      throw ConfigError("speed_multiplier", err.what());
    }
  }
  s.echo = std::move(in.echo);
  return s;
}

void add_zeta_derived(EstimateRecord& r, int m) {
  const double factor = zeta_even_rational_factor(m);
  if (factor == 0.0) return;
  DerivedEstimate d;
  d.label = "pi^" + std::to_string(m);
  d.estimate = r.estimate / factor;
  d.std_error = r.std_error / factor;
  d.reference = std::pow(kReference.pi, m);
  r.derived = d;
}

// ---- integral --------------------------------------------------------------

struct SignedTally {
  std::uint64_t above = 0;
  std::uint64_t below = 0;
  SignedTally& operator+=(const SignedTally& o) {
    above += o.above;
    below += o.below;
    return *this;
  }
};

}  // namespace

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::sqrt2: return "sqrt2";
    case Variant::pi: return "pi";
    case Variant::e: return "e";
    case Variant::zeta: return "zeta";
    case Variant::sec_tan: return "sec_tan";
    case Variant::integral: return "integral";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::sqrt2, Variant::pi, Variant::e, Variant::zeta, Variant::sec_tan, Variant::integral}) {
    if (to_string(v) == name) return v;
  }
  throw ConfigError("variant", "unknown variant \"" + std::string(name) +
                                   "\" (expected sqrt2|pi|e|zeta|sec_tan|integral)");
}

EstimateRecord estimate_sqrt2(const ExperimentConfig& config, const ExecutionOptions& options) {
  check_trials(config);
  ParamReader in(config.params, Variant::sqrt2,
                 {"leg_blocks", "speed", "slowness", "radicand", "hopper_period", "start_phase"});
  const std::int64_t leg_blocks = in.integer("leg_blocks", 100, 1, std::int64_t{1} << 40);
  const double speed = in.real("speed", kDefaultWalkSpeed);
  const double slowness = in.real("slowness", 1.0);
  const auto radicand = static_cast<std::uint64_t>(in.integer("radicand", 2, 1, 1'000'000));
  const HopperTimer timer{in.real("hopper_period", 0.4)};
  const bool random_phase = in.choice("start_phase", "fixed", {"fixed", "random"}) == "random";
  if (!(speed > 0.0)) throw ConfigError("speed", "must be positive");
  if (!(slowness > 0.0 && slowness <= 1.0)) throw ConfigError("slowness", "must lie in (0, 1]");
  if (!(timer.period_seconds > 0.0)) throw ConfigError("hopper_period", "must be positive");
  const auto sides = two_squares(radicand);
  if (!sides) throw ConfigError("radicand", "is not a sum of two squares");

  const RectangleCourse course{leg_blocks, static_cast<std::int64_t>(sides->first),
                               static_cast<std::int64_t>(sides->second), speed * slowness};
  const TraversalTimes times = traversal_seconds(course);
  const StreamFamily family(config.seed, "sqrt2");

  auto tally = run_trials<HopperTally>(config.trials, options.workers, [&](std::uint64_t i, HopperTally& acc) {
    double leg_phase = 0.0;
    double hyp_phase = 0.0;
    if (random_phase) {
      RngStream stream = family.stream(i);
      leg_phase = timer.period_seconds * stream.next_unit();
      hyp_phase = timer.period_seconds * stream.next_unit();
    }
    const std::uint64_t leg = hopper_item_count(timer, times.leg_seconds + leg_phase);
    const std::uint64_t hyp = hopper_item_count(timer, times.hypotenuse_seconds + hyp_phase);
    acc.hyp += hyp;
    acc.leg += leg;
    acc.hyp_sq += static_cast<unsigned __int128>(hyp) * hyp;
    acc.leg_sq += static_cast<unsigned __int128>(leg) * leg;
    acc.cross += static_cast<unsigned __int128>(hyp) * leg;
  });

  EstimateRecord r = base_record(config, std::move(in.echo));
  r.reference = radicand == 2 ? kReference.sqrt2 : std::sqrt(static_cast<double>(radicand));
  fill_sqrt_from_counts(r, tally.hyp, tally.leg, config.trials);
  if (random_phase && config.trials > 1) {
    // Delta method for a ratio of means.
    const auto n = static_cast<double>(config.trials);
    const double mh = static_cast<double>(tally.hyp) / n;
    const double ml = static_cast<double>(tally.leg) / n;
    const double vh = static_cast<double>(tally.hyp_sq) / n - mh * mh;
    const double vl = static_cast<double>(tally.leg_sq) / n - ml * ml;
    const double c = static_cast<double>(tally.cross) / n - mh * ml;
    const double ratio = r.estimate;
    const double var = (vh - 2.0 * ratio * c + ratio * ratio * vl) / (ml * ml * (n - 1.0));
    r.std_error = std::sqrt(std::max(0.0, var));
  }
  finish(r);
  return r;
}

EstimateRecord estimate_pi(const ExperimentConfig& config, const ExecutionOptions& options) {
  check_trials(config);
  PiSetup setup = pi_setup(config);
  const StreamFamily family(config.seed, "pi");
  const auto count = run_trials<Count>(config.trials, options.workers, [&](std::uint64_t i, Count& acc) {
    RngStream stream = family.stream(i);
    if (setup.inside(setup.sample(stream))) ++acc.hits;
  });
  EstimateRecord r = base_record(config, std::move(setup.echo));
  r.reference = kReference.pi;
  fill_proportion(r, count.hits, config.trials, 4.0);
  finish(r);
  return r;
}

std::vector<ScatterPoint> pi_sample_points(const ExperimentConfig& config, std::size_t limit) {
  check_trials(config);
  const PiSetup setup = pi_setup(config);
  const StreamFamily family(config.seed, "pi");
  const auto n = std::min<std::uint64_t>(limit, config.trials);
  std::vector<ScatterPoint> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    RngStream stream = family.stream(i);
    const Vec2 p = setup.sample(stream);
    out.push_back({p, setup.inside(p)});
  }
  return out;
}

double pi_square_side(const ExperimentConfig& config) {
  const PiSetup setup = pi_setup(config);
  return setup.arena.upper() - setup.arena.lower();
}

EstimateRecord estimate_e(const ExperimentConfig& config, const ExecutionOptions& options) {
  check_trials(config);
  ParamReader in(config.params, Variant::e, {"permutation_size"});
  const Dropper dropper{static_cast<int>(in.integer("permutation_size", 9, 2, 9))};
  const StreamFamily family(config.seed, "e");
  const auto count = run_trials<Count>(config.trials, options.workers, [&](std::uint64_t i, Count& acc) {
    RngStream stream = family.stream(i);
    std::array<int, 9> order{};
    dropper_eject_all(dropper, stream, order);
    if (is_derangement(std::span<const int>(order.data(), static_cast<std::size_t>(dropper.slot_count)))) {
      ++acc.hits;
    }
  });
  EstimateRecord r = base_record(config, std::move(in.echo));
  r.reference = kReference.e;
  fill_inverse_ratio(r, count.hits, config.trials, 1.0);
  finish(r);
  return r;
}

EstimateRecord estimate_zeta(const ExperimentConfig& config, const ExecutionOptions& options) {
  check_trials(config);
  ZetaSetup setup = zeta_setup(config);
  const StreamFamily family(config.seed, "zeta");
  const auto m = static_cast<std::size_t>(setup.m);
  const auto count = run_trials<Count>(config.trials, options.workers, [&](std::uint64_t i, Count& acc) {
    RngStream stream = family.stream(i);
    std::array<std::uint64_t, kMaxTupleSize> values{};
    for (std::size_t k = 0; k < m; ++k) {
      values[k] = setup.uniform ? 1 + stream.next_int_below(setup.value_bound)
                                : ticks_until_growth(setup.sched, setup.growth_probability, stream);
    }
    if (gcd_tuple(std::span<const std::uint64_t>(values.data(), m)) == 1) ++acc.hits;
  });
  EstimateRecord r = base_record(config, std::move(setup.echo));
  r.reference = zeta_value(setup.m);
  if (!setup.uniform) r.flags.push_back("non_uniform_sampler");
  fill_inverse_ratio(r, count.hits, config.trials, 1.0);
  add_zeta_derived(r, setup.m);
  finish(r);
  return r;
}

EstimateRecord estimate_sec_tan(const ExperimentConfig& config, const ExecutionOptions& options) {
  check_trials(config);
  ParamReader in(config.params, Variant::sec_tan, {"max_size"});
  const int max_size = static_cast<int>(in.integer("max_size", 9, 0, 9));
  EstimateRecord r = base_record(config, std::move(in.echo));
  r.reference = kReference.sec1_plus_tan1;
  // Sizes 0 and 1 are alternating with certainty.
  double sum = std::min(max_size + 1, 2);
  double variance = 0.0;
  std::uint64_t alternating_total = 0;
  std::uint64_t sampled = 0;
  const auto n_trials = static_cast<double>(config.trials);
  for (int n = 2; n <= max_size; ++n) {
    const Dropper dropper{n};
    const StreamFamily family(config.seed, "sec_tan/" + std::to_string(n));
    const auto count = run_trials<Count>(config.trials, options.workers, [&](std::uint64_t i, Count& acc) {
      RngStream stream = family.stream(i);
      std::array<int, 9> order{};
      dropper_eject_all(dropper, stream, order);
      if (is_alternating(std::span<const int>(order.data(), static_cast<std::size_t>(n)))) ++acc.hits;
    });
    const double p = static_cast<double>(count.hits) / n_trials;
    sum += p;
    variance += p * (1.0 - p) / n_trials;
    alternating_total += count.hits;
    sampled += config.trials;
  }
  r.estimate = sum;
  r.trials_used = sampled;
  r.success_count = alternating_total;
  r.std_error = std::sqrt(variance);
  r.ci_low = sum - kZ95 * r.std_error;
  r.ci_high = sum + kZ95 * r.std_error;
  finish(r);
  return r;
}

EstimateRecord estimate_integral(const ExperimentConfig& config, const ExecutionOptions& options) {
  check_trials(config);
  ParamReader in(config.params, Variant::integral, {"function", "a", "b", "raster_mode"});
  const Expression f = Expression::parse(in.text("function", "x^2*sin(x) + cbrt(x)"));
  const double a = in.real("a", 0.0);
  const double b = in.real("b", 8.0);
  const std::string mode = in.choice("raster_mode", "continuous", {"continuous", "raster", "rasterized"});
  const bool rasterized = mode != "continuous";
  if (!(a < b)) throw ConfigError("b", "need a < b");

  std::optional<CurveRaster> curve_raster;
  if (rasterized) {
    if (a != std::floor(a) || b != std::floor(b)) throw ConfigError("a", "raster mode needs integer bounds");
    curve_raster = rasterize_curve(f, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
  }

  // Bounding box: dense samples of the curve, always including y = 0.
  constexpr int kBoxSamples = 10'000;
  double y_min = 0.0;
  double y_max = 0.0;
  for (int i = 0; i <= kBoxSamples; ++i) {
    const double x = a + (b - a) * i / kBoxSamples;
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw DomainError(static_cast<std::int64_t>(std::floor(x)), "integral: f is not finite at x = " + format_real(x));
    }
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (curve_raster) {
    for (auto h : curve_raster->heights) {
      y_min = std::min(y_min, static_cast<double>(h));
      y_max = std::max(y_max, static_cast<double>(h));
    }
  }
  const double area = (b - a) * (y_max - y_min);
  if (!std::isfinite(area)) throw DegenerateSample("integral: degenerate region, bounding box area is not finite");

  auto curve = [&](double x) {
    if (!curve_raster) return f(x);
    const auto col = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(x)) - curve_raster->a,
                                            static_cast<std::int64_t>(curve_raster->heights.size()) - 1);
    return static_cast<double>(curve_raster->heights[static_cast<std::size_t>(col)]);
  };

  const StreamFamily family(config.seed, "integral");
  const auto tally = run_trials<SignedTally>(config.trials, options.workers, [&](std::uint64_t i, SignedTally& acc) {
    RngStream stream = family.stream(i);
    const double x = a + (b - a) * stream.next_unit();
    const double y = y_min + (y_max - y_min) * stream.next_unit();
    const double c = curve(x);
    if (y > 0.0 && y <= c) ++acc.above;
    if (y < 0.0 && y >= c) ++acc.below;
  });

  EstimateRecord r = base_record(config, std::move(in.echo));
  r.params["y_min"] = format_real(y_min);
  r.params["y_max"] = format_real(y_max);
  if (curve_raster) {
    std::int64_t column_sum = 0;
    for (auto h : curve_raster->heights) column_sum += h;
    r.reference = static_cast<double>(column_sum);
  } else {
    r.reference = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&f](double x) { return f(x); }, a, b, 15, 1e-12);
  }
  const auto n = static_cast<double>(config.trials);
  const double q_above = static_cast<double>(tally.above) / n;
  const double q_below = static_cast<double>(tally.below) / n;
  r.success_count = tally.above + tally.below;
  r.estimate = (q_above - q_below) * area;
  const double var = q_above + q_below - (q_above - q_below) * (q_above - q_below);
  r.std_error = area * std::sqrt(std::max(0.0, var) / n);
  r.ci_low = r.estimate - kZ95 * r.std_error;
  r.ci_high = r.estimate + kZ95 * r.std_error;
  if (r.reference == 0.0) {
    r.relative_error_percent = r.estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    finish(r);
  }
  return r;
}

EstimateRecord estimate(const ExperimentConfig& config, const ExecutionOptions& options) {
  switch (config.variant) {
    case Variant::sqrt2: return estimate_sqrt2(config, options);
    case Variant::pi: return estimate_pi(config, options);
    case Variant::e: return estimate_e(config, options);
    case Variant::zeta: return estimate_zeta(config, options);
    case Variant::sec_tan: return estimate_sec_tan(config, options);
    case Variant::integral: return estimate_integral(config, options);
  }
  throw ConfigError("variant", "unsupported variant");
}

EstimateRecord estimate_from_counts(Variant variant, std::uint64_t numerator, std::uint64_t denominator,
                                    const ParamMap& params) {
  ExperimentConfig config{variant, MasterSeed{0}, 1, params};
  ParamMap echo;
  echo["from_counts"] = std::to_string(numerator) + "," + std::to_string(denominator);
  int m = 3;
  if (variant == Variant::zeta) {
    ParamReader in(params, variant, {"m"});
    m = static_cast<int>(in.integer("m", 3, 2, kMaxTupleSize));
    echo.merge(in.echo);
  } else if (!params.empty()) {
    ParamReader in(params, variant, {});
  }
  EstimateRecord r = base_record(config, std::move(echo));
  switch (variant) {
    case Variant::sqrt2:
      r.trials_used = 1;
      r.reference = kReference.sqrt2;
      fill_sqrt_from_counts(r, numerator, denominator, 1);
      break;
    case Variant::pi:
      if (denominator == 0) throw DegenerateSample("pi: no deaths recorded");
      if (numerator > denominator) throw InvalidArgument("pi: inside count exceeds total");
      r.trials_used = denominator;
      r.reference = kReference.pi;
      fill_proportion(r, numerator, denominator, 4.0);
      break;
    case Variant::e:
    case Variant::zeta:
      if (denominator > numerator) throw InvalidArgument("successes exceed trials");
      r.trials_used = numerator;
      r.reference = variant == Variant::e ? kReference.e : zeta_value(m);
      fill_inverse_ratio(r, denominator, numerator, 1.0);
      if (variant == Variant::zeta) add_zeta_derived(r, m);
      break;
    default:
      throw ConfigError("from_counts", "not supported for variant " + std::string(to_string(variant)));
  }
  finish(r);
  return r;
}

}  // namespace blockmonte
