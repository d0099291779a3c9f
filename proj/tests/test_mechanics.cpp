#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "blockmonte/errors.hpp"
#include "blockmonte/mechanics.hpp"
#include "test_support.hpp"

using namespace blockmonte;
using blockmonte::testing::binomial_sigma;
using blockmonte::testing::chi_square_critical;
using blockmonte::testing::chi_square_uniform;

TEST_CASE("hopper examples") {
  const HopperTimer hopper{};
  CHECK(hopper_item_count(hopper, 10.2) == 25);
  CHECK(hopper_item_count(hopper, 0.0) == 0);
  CHECK(hopper_item_count(hopper, 0.4) == 1);
  CHECK(hopper_item_count(hopper, 0.39) == 0);
  CHECK_THROWS_AS(hopper_item_count(hopper, -1.0), InvalidArgument);
  CHECK_THROWS_AS(hopper_item_count(HopperTimer{0.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(hopper_item_count(HopperTimer{-0.4}, 1.0), InvalidArgument);
}

TEST_CASE("hopper count is constant on [n P, (n + 1) P)") {
  for (double period : {0.4, 0.05, 1.0 / 3.0, 2.5}) {
    const HopperTimer hopper{period};
    for (std::uint64_t n = 0; n <= 300; ++n) {
      for (double frac : {0.0, 0.1, 0.5, 0.9, 0.999}) {
        const double t = (static_cast<double>(n) + frac) * period;
        CAPTURE(period);
        CAPTURE(t);
        CHECK(hopper_item_count(hopper, t) == n);
      }
    }
  }
}

TEST_CASE("dropper") {
  RngStream s = derive_stream(MasterSeed{1}, {"dropper", 0});

  SUBCASE("one slot") { CHECK(dropper_permutation(Dropper{1}, s).to_string() == "1"); }
  SUBCASE("nine slots give a permutation of 1..9") {
    for (int i = 0; i < 100; ++i) {
      const Permutation p = dropper_permutation(Dropper{9}, s);
      std::vector<int> v(p.entries().begin(), p.entries().end());
      std::sort(v.begin(), v.end());
      CHECK(v == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    }
  }
  SUBCASE("slot count out of range") {
    CHECK_THROWS_AS(dropper_permutation(Dropper{0}, s), InvalidArgument);
    CHECK_THROWS_AS(dropper_permutation(Dropper{10}, s), InvalidArgument);
  }
  SUBCASE("eject_all needs room") {
    std::vector<int> out(3);
    CHECK_THROWS_AS(dropper_eject_all(Dropper{4}, s, out), InvalidArgument);
  }
  SUBCASE("three slots, 60000 draws: each order in [9500, 10500]") {
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 60000; ++i) ++counts[dropper_permutation(Dropper{3}, s).to_string()];
    CHECK(counts.size() == 6);
    for (const auto& [order, c] : counts) {
      CAPTURE(order);
      CHECK(c >= 9500);
      CHECK(c <= 10500);
    }
  }
}

TEST_CASE("dropper orders are uniform for sizes up to 4") {
  for (int k = 1; k <= 4; ++k) {
    RngStream s = derive_stream(MasterSeed{77}, {"dropper-chi", static_cast<std::uint64_t>(k)});
    const std::uint64_t orders = factorial(k);
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < 10000 * orders; ++i)
      ++counts[dropper_permutation(Dropper{k}, s).to_string()];
    CHECK(counts.size() == orders);
    if (orders < 2) continue;
    std::vector<std::uint64_t> c;
    for (const auto& kv : counts) c.push_back(kv.second);
    CAPTURE(k);
    CHECK(chi_square_uniform(c) < chi_square_critical(static_cast<double>(orders - 1), 0.001));
  }
}

TEST_CASE("random tick selection probability") {
  const RandomTickScheduler sched{};
  const double q = 1.0 / 4096.0;
  CHECK(sched.selection_probability() == doctest::Approx(1.0 - std::pow(1.0 - q, 3)).epsilon(1e-12));
  CHECK(RandomTickScheduler{1, 1, 0.05, 1}.selection_probability() == 1.0);
  CHECK_THROWS_AS((RandomTickScheduler{0, 3, 0.05, 1}.validate()), InvalidArgument);
  CHECK_THROWS_AS((RandomTickScheduler{4096, 0, 0.05, 1}.validate()), InvalidArgument);
  CHECK_THROWS_AS((RandomTickScheduler{4096, 3, 0.05, 0}.validate()), InvalidArgument);
}

TEST_CASE("ticks_until_growth") {
  RngStream s = derive_stream(MasterSeed{3}, {"tick", 0});

  SUBCASE("certain growth grows on the first tick") {
    for (int i = 0; i < 100; ++i) CHECK(ticks_until_growth({1, 1, 0.05, 1}, 1.0, s) == 1);
  }
  SUBCASE("growth probability must be in (0, 1]") {
    CHECK_THROWS_AS(ticks_until_growth({}, 0.0, s), InvalidArgument);
    CHECK_THROWS_AS(ticks_until_growth({}, 1.5, s), InvalidArgument);
  }
}

namespace {

double mean_ticks(const RandomTickScheduler& sched, double growth, std::uint64_t label, int n) {
  RngStream s = derive_stream(MasterSeed{12}, {"tick-mean", label});
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(ticks_until_growth(sched, growth, s));
  return sum / n;
}

}  // namespace

TEST_CASE("tick means follow the geometric law, default and 64x speed") {
  constexpr int kDraws = 100000;
  const double growth = 1.0 / 3.0;
  const RandomTickScheduler normal{};
  RandomTickScheduler fast{};
  fast.speed_multiplier = 64;

  const double p1 = normal.selection_probability() * growth;
  const double p64 = fast.selection_probability() * growth;
  const double m1 = mean_ticks(normal, growth, 1, kDraws);
  const double m64 = mean_ticks(fast, growth, 64, kDraws);
  CHECK(std::fabs(m1 - 1.0 / p1) < 3.0 * std::sqrt((1.0 - p1) / (p1 * p1) / kDraws));
  CHECK(std::fabs(m64 - 1.0 / p64) < 3.0 * std::sqrt((1.0 - p64) / (p64 * p64) / kDraws));
  // 64x picks per tick shortens the wait by roughly 64 (exactly 64 only as picks/cells -> 0).
  CHECK(m1 / m64 == doctest::Approx(64.0).epsilon(0.05));
}

TEST_CASE("tick survival matches (1 - p)^k") {
  constexpr int kDraws = 100000;
  const RandomTickScheduler sched{16, 1, 0.05, 1};
  const double p = sched.selection_probability() * (1.0 / 3.0);
  RngStream s = derive_stream(MasterSeed{4}, {"tick-tail", 0});
  std::vector<std::uint64_t> t(kDraws);
  for (auto& v : t) v = ticks_until_growth(sched, 1.0 / 3.0, s);
  for (std::uint64_t k : {1, 5, 10, 48, 100}) {
    const double expected = std::pow(1.0 - p, static_cast<double>(k));
    const double observed =
        static_cast<double>(std::count_if(t.begin(), t.end(), [&](auto v) { return v > k; })) /
        kDraws;
    CAPTURE(k);
    CHECK(std::fabs(observed - expected) < 3.0 * binomial_sigma(expected, kDraws));
  }
}

TEST_CASE("tick waits agree with a brute-force per-tick simulation") {
  constexpr int kDraws = 50000;
  const RandomTickScheduler sched{64, 3, 0.05, 2};
  const double growth = 0.5;

  RngStream brute = derive_stream(MasterSeed{5}, {"tick-brute", 0});
  double brute_sum = 0.0, brute_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    std::uint64_t tick = 0;
    for (bool grown = false; !grown;) {
      ++tick;
      bool picked = false;
      for (std::uint64_t pick = 0; pick < sched.picks_per_tick * sched.speed_multiplier; ++pick)
        picked = brute.next_int_below(sched.cube_cells) == 0 || picked;
      grown = picked && brute.next_unit() < growth;
    }
    brute_sum += static_cast<double>(tick);
    brute_sq += static_cast<double>(tick) * static_cast<double>(tick);
  }
  const double brute_mean = brute_sum / kDraws;
  const double brute_var = brute_sq / kDraws - brute_mean * brute_mean;

  const double p_tick = sched.selection_probability() * growth;
  const double model_mean = mean_ticks(sched, growth, 999, kDraws);
  const double model_sigma = std::sqrt((1.0 - p_tick) / (p_tick * p_tick) / kDraws);
  const double brute_sigma = std::sqrt(brute_var / kDraws);
  CHECK(std::fabs(brute_mean - 1.0 / p_tick) < 4.0 * brute_sigma);
  CHECK(std::fabs(model_mean - brute_mean) <
        4.0 * std::sqrt(model_sigma * model_sigma + brute_sigma * brute_sigma));
}

TEST_CASE("slime arena validation and geometry") {
  SlimeArena arena{};
  CHECK(arena.lower() == -11.0);
  CHECK(arena.upper() == 12.0);
  CHECK(arena.cell_of({-11.0, 11.999}) == GridCell{-11, 11});
  CHECK(arena.cell_of({0.5, -0.5}) == GridCell{0, -1});
  arena.kill_probability = 0.0;
  CHECK_THROWS_AS(arena.validate(), InvalidArgument);
  arena = SlimeArena{};
  arena.half_width = 0;
  CHECK_THROWS_AS(arena.validate(), InvalidArgument);
  arena = SlimeArena{};
  arena.turn_probability = 1.5;
  CHECK_THROWS_AS(arena.validate(), InvalidArgument);
}

TEST_CASE("slime killed at once dies on a uniform start cell") {
  SlimeArena arena{};
  arena.half_width = 2;
  arena.kill_probability = 1.0;
  RngStream s = derive_stream(MasterSeed{6}, {"slime-start", 0});
  std::vector<std::uint64_t> counts(25, 0);
  for (int i = 0; i < 50000; ++i) {
    const GridCell c = slime_death_cell(arena, s);
    ++counts[static_cast<std::size_t>((c.z + 2) * 5 + (c.x + 2))];
  }
  CHECK(chi_square_uniform(counts) < chi_square_critical(24.0, 0.001));
}

TEST_CASE("slimes never leave the arena") {
  std::vector<SlimeArena> arenas(4);
  arenas[1].step_cells = 7.5;
  arenas[1].drift = {2.0, -3.0};
  arenas[2].half_width = 1;
  arenas[2].step_cells = 0.3;
  arenas[2].turn_probability = 1.0;
  arenas[3].drift = {-0.9, 0.9};
  arenas[3].kill_probability = 0.001;
  std::uint64_t label = 0;
  for (const auto& arena : arenas) {
    RngStream s = derive_stream(MasterSeed{8}, {"slime-box", label++});
    for (int i = 0; i < 2000; ++i) {
      const WalkerState w = slime_walk(arena, s);
      CHECK(w.position.x >= arena.lower());
      CHECK(w.position.x < arena.upper());
      CHECK(w.position.z >= arena.lower());
      CHECK(w.position.z < arena.upper());
      CHECK(w.heading >= 0.0);
      CHECK(w.heading < 2.0 * M_PI);
    }
  }
}

namespace {

std::vector<GridCell> deaths(const SlimeArena& arena, std::uint64_t label, int n) {
  RngStream s = derive_stream(MasterSeed{31}, {"slime-deaths", label});
  std::vector<GridCell> out(static_cast<std::size_t>(n));
  for (auto& c : out) c = slime_death_cell(arena, s);
  return out;
}

}  // namespace

TEST_CASE("undrifted deaths land in the disc at the cell-count rate") {
  constexpr int kDeaths = 200000;
  SlimeArena arena{};
  arena.half_width = 20;
  const auto cells = deaths(arena, 0, kDeaths);
  std::int64_t disc = 0;
  for (std::int64_t x = -20; x <= 20; ++x)
    for (std::int64_t z = -20; z <= 20; ++z) disc += x * x + z * z <= 400 ? 1 : 0;
  const double p = static_cast<double>(disc) / (41.0 * 41.0);
  const double observed =
      static_cast<double>(std::count_if(cells.begin(), cells.end(),
                                        [](GridCell c) { return c.x * c.x + c.z * c.z <= 400; })) /
      kDeaths;
  CHECK(std::fabs(observed - p) < 3.0 * binomial_sigma(p, kDeaths));
}

TEST_CASE("undrifted quadrants balance within 4 sigma") {
  constexpr int kDeaths = 200000;
  SlimeArena arena{};
  const auto cells = deaths(arena, 1, kDeaths);
  std::array<double, 4> q{};
  for (const auto& c : cells) {
    if (c.x == 0 || c.z == 0) continue;
    q[(c.x > 0 ? 1 : 0) + (c.z > 0 ? 2 : 0)] += 1.0;
  }
  // Each off-axis quadrant holds 11 x 11 of the 23 x 23 cells.
  const double p = 121.0 / 529.0;
  const double sigma = std::sqrt(2.0 * kDeaths * p);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(std::fabs(q[i] - q[j]) < 4.0 * sigma);
}

TEST_CASE("south-east drift moves the mean death cell south-east") {
  constexpr int kDeaths = 50000;
  SlimeArena plain{};
  plain.half_width = 20;
  SlimeArena drifted = plain;
  drifted.drift = {0.3, -0.3};
  const auto base = deaths(plain, 2, kDeaths);
  const auto moved = deaths(drifted, 3, kDeaths);
  auto mean = [](const std::vector<GridCell>& v, bool x) {
    double s = 0.0;
    for (const auto& c : v) s += static_cast<double>(x ? c.x : c.z);
    return s / static_cast<double>(v.size());
  };
  // Uniform cell coordinate on [-20, 20]: variance (41^2 - 1) / 12.
  const double sigma = std::sqrt((41.0 * 41.0 - 1.0) / 12.0 / kDeaths);
  CHECK(std::fabs(mean(base, true)) < 4.0 * sigma);
  CHECK(std::fabs(mean(base, false)) < 4.0 * sigma);
  CHECK(mean(moved, true) > 3.0 * sigma);
  CHECK(mean(moved, false) < -3.0 * sigma);
}
