#pragma once

#include <cstdint>
#include <span>

#include "blockmonte/combinatorics.hpp"
#include "blockmonte/geometry.hpp"
#include "blockmonte/rng.hpp"

namespace blockmonte {

// Game-free models of the block mechanics used as measuring instruments.

/// A hopper releases one item per period (2.5 items/s in game).
struct HopperTimer {
  double period_seconds = 0.4;

  void validate() const;
};

/// Items released while the hopper runs for `duration_seconds`: n items for
/// every duration in [n * period, (n + 1) * period). Durations within 1e-9
/// (relative) of a release boundary count that release.
std::uint64_t hopper_item_count(const HopperTimer& timer, double duration_seconds);

/// Holds up to nine distinct items and ejects a uniformly random one per pulse.
struct Dropper {
  int slot_count = 9;

  void validate() const;
};

/// Ejects every item without replacement; entry i is the item ejected i-th.
Permutation dropper_permutation(const Dropper& dropper, RngStream& stream);

/// Allocation-free form: fills out[0..slot_count) with the ejection order.
void dropper_eject_all(const Dropper& dropper, RngStream& stream, std::span<int> out);

/// Random block ticks inside one 16x16x16 section.
struct RandomTickScheduler {
  std::uint64_t cube_cells = 4096;
  std::uint64_t picks_per_tick = 3;
  double tick_seconds = 0.05;
  std::uint64_t speed_multiplier = 1;

  void validate() const;

  /// Chance the watched block is picked at least once in a game tick
  /// (picks are with replacement).
  double selection_probability() const;
};

/// Game tick (>= 1) at which the watched block first grows. Geometric with
/// success probability selection_probability() * growth_prob.
std::uint64_t ticks_until_growth(const RandomTickScheduler& sched, double growth_prob,
                                 RngStream& stream);

struct Vec2 {
  double x = 0.0;
  double z = 0.0;
};

/// Square pen of cells [-R, R]^2 (continuous extent [-R, R + 1)^2) in which
/// slimes wander until killed.
///
/// Each step: with kill_probability the slime dies where it stands;
/// otherwise with turn_probability it picks a fresh uniform heading, moves
/// step_cells along the heading plus drift, and reflects specularly off the
/// walls.
struct SlimeArena {
  std::int64_t half_width = 11;
  double step_cells = 1.0;
  double turn_probability = 0.1;
  Vec2 drift{0.0, 0.0};
  double kill_probability = 0.01;

  void validate() const;

  double lower() const noexcept { return -static_cast<double>(half_width); }
  double upper() const noexcept { return static_cast<double>(half_width) + 1.0; }
  CircleRaster raster() const { return rasterize_circle(half_width); }
  GridCell cell_of(Vec2 position) const;
};

struct WalkerState {
  Vec2 position;
  double heading = 0.0;  // radians in [0, 2*pi)
};

/// Runs one slime from a uniform start until death; returns its final state.
WalkerState slime_walk(const SlimeArena& arena, RngStream& stream);

/// The cell the slime dies in.
GridCell slime_death_cell(const SlimeArena& arena, RngStream& stream);

}  // namespace blockmonte
