#include "blockmonte/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "blockmonte/errors.hpp"

namespace blockmonte {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Folds t into [lo, hi] by mirror reflection. Returns true if an odd number
// of reflections happened (the velocity component flips sign).
bool reflect_into(double& t, double lo, double hi) {
  const double width = hi - lo;
  if (t >= lo && t <= hi) return false;
  double u = std::fmod(t - lo, 2.0 * width);
  if (u < 0.0) u += 2.0 * width;
  const bool odd = u > width;
  t = odd ? lo + (2.0 * width - u) : lo + u;
  return odd;
}

double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

}  // namespace

void HopperTimer::validate() const {
  if (!(period_seconds > 0.0) || !std::isfinite(period_seconds)) {
    throw InvalidArgument("HopperTimer: period must be positive");
  }
}

std::uint64_t hopper_item_count(const HopperTimer& timer, double duration_seconds) {
  timer.validate();
  if (!(duration_seconds >= 0.0) || !std::isfinite(duration_seconds)) {
    throw InvalidArgument("hopper_item_count: duration must be a non-negative number");
  }
  const double ratio = duration_seconds / timer.period_seconds;
  const double nearest = std::round(ratio);
  if (std::fabs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::floor(ratio));
}

void Dropper::validate() const {
  if (slot_count < 1 || slot_count > 9) throw InvalidArgument("Dropper: slot_count must lie in [1, 9]");
}

void dropper_eject_all(const Dropper& dropper, RngStream& stream, std::span<int> out) {
  dropper.validate();
  const auto n = static_cast<std::size_t>(dropper.slot_count);
  if (out.size() < n) throw InvalidArgument("dropper_eject_all: output span too small");
  int held[9];
  std::iota(held, held + n, 1);
  std::size_t remaining = n;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto pick = static_cast<std::size_t>(stream.next_int_below(remaining));
    out[pos] = held[pick];
    held[pick] = held[--remaining];
  }
}

Permutation dropper_permutation(const Dropper& dropper, RngStream& stream) {
  dropper.validate();
  std::vector<int> order(static_cast<std::size_t>(dropper.slot_count));
  dropper_eject_all(dropper, stream, order);
  return Permutation(std::move(order));
}

void RandomTickScheduler::validate() const {
  if (cube_cells == 0 || picks_per_tick == 0 || speed_multiplier == 0) {
    throw InvalidArgument("RandomTickScheduler: counts must be positive");
  }
  if (!(tick_seconds > 0.0)) throw InvalidArgument("RandomTickScheduler: tick_seconds must be positive");
  if (picks_per_tick * speed_multiplier > cube_cells) {
    throw InvalidArgument("RandomTickScheduler: picks_per_tick * speed_multiplier exceeds cube_cells");
  }
}

double RandomTickScheduler::selection_probability() const {
  validate();
  const auto picks = static_cast<double>(picks_per_tick * speed_multiplier);
  // 1 - (1 - 1/cells)^picks without cancellation for large cells.
  return -std::expm1(picks * std::log1p(-1.0 / static_cast<double>(cube_cells)));
}

std::uint64_t ticks_until_growth(const RandomTickScheduler& sched, double growth_prob,
                                 RngStream& stream) {
  if (!(growth_prob > 0.0 && growth_prob <= 1.0)) {
    throw InvalidArgument("ticks_until_growth: growth_prob must lie in (0, 1]");
  }
  return stream.geometric_trials(sched.selection_probability() * growth_prob);
}

void SlimeArena::validate() const {
  if (half_width < 1) throw InvalidArgument("SlimeArena: half_width must be >= 1");
  if (!(step_cells >= 0.0) || !std::isfinite(step_cells)) {
    throw InvalidArgument("SlimeArena: step_cells must be non-negative");
  }
  if (!is_probability(turn_probability)) throw InvalidArgument("SlimeArena: turn_probability must lie in [0, 1]");
  if (!(kill_probability > 0.0 && kill_probability <= 1.0)) {
    throw InvalidArgument("SlimeArena: kill_probability must lie in (0, 1]");
  }
  if (!std::isfinite(drift.x) || !std::isfinite(drift.z)) throw InvalidArgument("SlimeArena: drift must be finite");
}

GridCell SlimeArena::cell_of(Vec2 position) const {
  auto clamp_cell = [this](double t) {
    auto c = static_cast<std::int64_t>(std::floor(t));
    return std::clamp<std::int64_t>(c, -half_width, half_width);
  };
  return {clamp_cell(position.x), clamp_cell(position.z)};
}

WalkerState slime_walk(const SlimeArena& arena, RngStream& stream) {
  arena.validate();
  const double lo = arena.lower();
  const double hi = arena.upper();
  const double width = hi - lo;
  WalkerState w;
  w.position = {lo + width * stream.next_unit(), lo + width * stream.next_unit()};
  w.heading = kTwoPi * stream.next_unit();
  while (!stream.bernoulli(arena.kill_probability)) {
    if (stream.bernoulli(arena.turn_probability)) w.heading = kTwoPi * stream.next_unit();
    double x = w.position.x + arena.step_cells * std::cos(w.heading) + arena.drift.x;
    double z = w.position.z + arena.step_cells * std::sin(w.heading) + arena.drift.z;
    if (reflect_into(x, lo, hi)) w.heading = std::numbers::pi - w.heading;
    if (reflect_into(z, lo, hi)) w.heading = -w.heading;
    w.heading = normalize_angle(w.heading);
    w.position = {x, z};
  }
  return w;
}

GridCell slime_death_cell(const SlimeArena& arena, RngStream& stream) {
  return arena.cell_of(slime_walk(arena, stream).position);
}

}  // namespace blockmonte
