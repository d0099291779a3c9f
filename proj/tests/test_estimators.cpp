#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "blockmonte/combinatorics.hpp"
#include "blockmonte/errors.hpp"
#include "blockmonte/estimators.hpp"
#include "blockmonte/geometry.hpp"
#include "blockmonte/mechanics.hpp"
#include "blockmonte/stats.hpp"

using namespace blockmonte;

namespace {

ExperimentConfig make(Variant v, std::uint64_t seed, std::uint64_t trials, ParamMap params = {}) {
  return ExperimentConfig{v, MasterSeed{seed}, trials, std::move(params)};
}

constexpr double kZeta3 = 1.2020569031595942854;
// Antiderivative of x^2 sin x + cbrt x.
double curve_integral(double a, double b) {
  auto F = [](double x) {
    return -x * x * std::cos(x) + 2.0 * x * std::sin(x) + 2.0 * std::cos(x) +
           0.75 * std::pow(x, 4.0 / 3.0);
  };
  return F(b) - F(a);
}

double sec_tan_partial(int max_size) {
  double s = 0.0;
  for (int n = 0; n <= max_size; ++n)
    s += static_cast<double>(zigzag_count(n)) / static_cast<double>(factorial(n));
  return s;
}

}  // namespace

TEST_CASE("variant names") {
  for (Variant v : {Variant::sqrt2, Variant::pi, Variant::e, Variant::zeta, Variant::sec_tan,
                    Variant::integral})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_variant("tau"), ConfigError);
}

TEST_CASE("counts reproduce the recorded runs") {
  const auto s = estimate_from_counts(Variant::sqrt2, 57, 41);
  CHECK(s.estimate == doctest::Approx(1.3902439).epsilon(1e-7));
  CHECK(s.relative_error_percent == doctest::Approx(1.70));

  const auto p = estimate_from_counts(Variant::pi, 508, 619);
  CHECK(p.estimate == doctest::Approx(3.282714).epsilon(1e-6));
  CHECK(p.relative_error_percent == doctest::Approx(4.49));

  const auto e = estimate_from_counts(Variant::e, 647, 238);
  CHECK(e.estimate == doctest::Approx(2.718487).epsilon(1e-6));
  CHECK(e.relative_error_percent == doctest::Approx(0.00766));

  const auto z = estimate_from_counts(Variant::zeta, 70, 58, {{"m", "3"}});
  CHECK(z.estimate == doctest::Approx(1.2068966).epsilon(1e-7));
  CHECK(z.relative_error_percent == doctest::Approx(0.403));

  const auto big = estimate_from_counts(Variant::pi, 33943, 43270);
  CHECK(big.estimate == doctest::Approx(3.137786).epsilon(1e-6));

  CHECK_THROWS_AS(estimate_from_counts(Variant::e, 10, 0), DegenerateSample);
  CHECK_THROWS_AS(estimate_from_counts(Variant::pi, 5, 0), DegenerateSample);
  CHECK_THROWS_AS(estimate_from_counts(Variant::pi, 7, 5), InvalidArgument);
  CHECK_THROWS_AS(estimate_from_counts(Variant::sec_tan, 1, 1), ConfigError);
}

TEST_CASE("sqrt2 hopper course") {
  SUBCASE("leg time of exactly 41 periods gives 57/41") {
    // 41 blocks at 2.5 blocks/s is 16.4 s = 41 periods; the hypotenuse holds 57.
    const auto r = estimate(make(Variant::sqrt2, 1, 1, {{"leg_blocks", "41"}, {"speed", "2.5"}}));
    CHECK(r.estimate == 57.0 / 41.0);
    CHECK(r.success_count == std::optional<std::uint64_t>{41});
  }
  SUBCASE("leg time of 10^4 periods is within 2e-4") {
    const auto r = estimate(make(Variant::sqrt2, 1, 1, {{"leg_blocks", "17268"}}));
    CHECK(std::fabs(r.estimate - std::numbers::sqrt2) <= 2e-4);
  }
  SUBCASE("quantization bound (1 + sqrt2) / N_leg") {
    double prev = 1.0;
    for (const char* leg : {"10", "100", "1000", "10000"}) {
      const auto r = estimate(make(Variant::sqrt2, 1, 1, {{"leg_blocks", leg}}));
      const double n_leg = static_cast<double>(*r.success_count);
      const double err = std::fabs(r.estimate - std::numbers::sqrt2);
      CAPTURE(leg);
      CHECK(err <= (1.0 + std::numbers::sqrt2) / n_leg);
      CHECK(n_leg > 0.0);
      CHECK(err <= prev + 1e-12);
      prev = (1.0 + std::numbers::sqrt2) / n_leg;
    }
  }
  SUBCASE("slower walkers count more items") {
    const auto fast = estimate(make(Variant::sqrt2, 1, 1));
    const auto slow = estimate(make(Variant::sqrt2, 1, 1, {{"slowness", "0.25"}}));
    CHECK(*slow.success_count > 3 * *fast.success_count);
  }
  SUBCASE("other radicands") {
    const auto r = estimate(make(Variant::sqrt2, 1, 1, {{"radicand", "5"}, {"leg_blocks", "2000"}}));
    CHECK(r.reference == doctest::Approx(std::sqrt(5.0)));
    CHECK(std::fabs(r.estimate - std::sqrt(5.0)) < 0.01);
    CHECK_THROWS_AS(estimate(make(Variant::sqrt2, 1, 1, {{"radicand", "7"}})), ConfigError);
  }
  SUBCASE("course shorter than one period") {
    CHECK_THROWS_AS(estimate(make(Variant::sqrt2, 1, 1, {{"leg_blocks", "1"}})), DegenerateSample);
  }
  SUBCASE("random phase removes the quantization bias") {
    const auto r = estimate(
        make(Variant::sqrt2, 3, 20000, {{"leg_blocks", "10"}, {"start_phase", "random"}}));
    CHECK(r.std_error > 0.0);
    CHECK(std::fabs(r.estimate - std::numbers::sqrt2) < 4.0 * r.std_error);
  }
  SUBCASE("unknown parameter names the key") {
    try {
      estimate(make(Variant::sqrt2, 1, 1, {{"legs", "3"}}));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "legs");
    }
  }
}

TEST_CASE("pi estimator") {
  SUBCASE("uniform exact disc, R = 50, 10^6 trials") {
    const auto r = estimate(make(Variant::pi, 7, 1000000,
                                 {{"sampler_mode", "uniform_ideal"}, {"raster_mode", "exact_disc"},
                                  {"radius", "50"}}));
    const double sigma = 4.0 * std::sqrt(std::numbers::pi / 4 * (1 - std::numbers::pi / 4) / 1e6);
    CHECK(std::fabs(r.estimate - std::numbers::pi) <= 3.0 * sigma);
    CHECK(r.ci_low <= r.estimate);
    CHECK(r.ci_high >= r.estimate);
  }
  SUBCASE("uniform cells against the raster hit the exact cell-count rate") {
    const auto r = estimate(make(Variant::pi, 8, 400000, {{"sampler_mode", "uniform_ideal"}}));
    const double p = static_cast<double>(rasterize_circle(11).size()) / (23.0 * 23.0);
    const double sigma = 4.0 * std::sqrt(p * (1 - p) / 4e5);
    CHECK(std::fabs(r.estimate - 4.0 * p) < 4.0 * sigma);
  }
  SUBCASE("default slime walk echoes its parameters") {
    const auto r = estimate(make(Variant::pi, 1, 2000));
    CHECK(r.params.at("sampler_mode") == "slime_walk");
    CHECK(r.params.at("radius") == "11");
    CHECK(r.estimate > 2.5);
    CHECK(r.estimate < 4.0);
  }
  SUBCASE("same seed, same record") {
    const auto cfg = make(Variant::pi, 99, 5000);
    CHECK(estimate(cfg) == estimate(cfg));
    CHECK(estimate(cfg) != estimate(make(Variant::pi, 100, 5000)));
  }
  SUBCASE("bad configuration") {
    CHECK_THROWS_AS(estimate(make(Variant::pi, 1, 0)), ConfigError);
    CHECK_THROWS_AS(estimate(make(Variant::pi, 1, 10, {{"radius", "0"}})), ConfigError);
    CHECK_THROWS_AS(estimate(make(Variant::pi, 1, 10, {{"sampler_mode", "teleport"}})), ConfigError);
  }
}

TEST_CASE("e estimator") {
  SUBCASE("nine slots, 10^6 trials") {
    const auto r = estimate(make(Variant::e, 5, 1000000));
    const double p = 133496.0 / 362880.0;
    const double sigma = std::sqrt(p * (1 - p) / 1e6) / (p * p);
    CHECK(std::fabs(r.estimate - 362880.0 / 133496.0) <= 3.0 * sigma);
    CHECK(r.std_error == doctest::Approx(sigma).epsilon(0.01));
  }
  SUBCASE("two slots converge to 2") {
    const auto r = estimate(make(Variant::e, 5, 100000, {{"permutation_size", "2"}}));
    CHECK(std::fabs(r.estimate - 2.0) < 4.0 * r.std_error);
  }
  SUBCASE("no derangement at all is degenerate") {
    bool saw = false;
    for (std::uint64_t seed = 0; seed < 64 && !saw; ++seed) {
      try {
        estimate(make(Variant::e, seed, 1, {{"permutation_size", "2"}}));
      } catch (const DegenerateSample&) {
        saw = true;
      }
    }
    CHECK(saw);
  }
  SUBCASE("size outside [2, 9]") {
    CHECK_THROWS_AS(estimate(make(Variant::e, 1, 10, {{"permutation_size", "10"}})), ConfigError);
    CHECK_THROWS_AS(estimate(make(Variant::e, 1, 10, {{"permutation_size", "1"}})), ConfigError);
  }
}

TEST_CASE("zeta estimator") {
  SUBCASE("m = 2 gives pi^2 through 6 zeta(2)") {
    const auto r = estimate(make(Variant::zeta, 2, 1000000, {{"m", "2"}}));
    REQUIRE(r.derived.has_value());
    CHECK(r.derived->label == "pi^2");
    CHECK(std::fabs(r.derived->estimate - std::numbers::pi * std::numbers::pi) <=
          3.0 * r.derived->std_error);
  }
  SUBCASE("m = 3 against zeta(3)") {
    const auto r = estimate(make(Variant::zeta, 3, 1000000));
    CHECK_FALSE(r.derived.has_value());
    CHECK(std::fabs(r.estimate - kZeta3) <= 4.0 * r.std_error);
  }
  SUBCASE("small value bound converges to the finite-range value") {
    const auto r = estimate(make(Variant::zeta, 4, 1000000, {{"value_bound", "10"}}));
    CHECK(std::fabs(r.estimate - 1000.0 / 841.0) <= 4.0 * r.std_error);
    CHECK(std::fabs(r.estimate - kZeta3) > 4.0 * r.std_error);
  }
  SUBCASE("m = 4 reports pi^4") {
    const auto r = estimate(make(Variant::zeta, 4, 1000, {{"m", "4"}}));
    REQUIRE(r.derived.has_value());
    CHECK(r.derived->label == "pi^4");
  }
  SUBCASE("random-tick sampler is flagged") {
    const auto r = estimate(make(Variant::zeta, 4, 2000, {{"sampler_mode", "random_tick"}}));
    CHECK(std::find(r.flags.begin(), r.flags.end(), "non_uniform_sampler") != r.flags.end());
  }
  SUBCASE("bad m") {
    CHECK_THROWS_AS(estimate(make(Variant::zeta, 1, 10, {{"m", "1"}})), ConfigError);
  }
}

TEST_CASE("sec + tan estimator") {
  CHECK(estimate(make(Variant::sec_tan, 1, 10, {{"max_size", "0"}})).estimate == 1.0);
  CHECK(estimate(make(Variant::sec_tan, 1, 10, {{"max_size", "1"}})).estimate == 2.0);
  const auto r = estimate(make(Variant::sec_tan, 6, 100000));
  double var = 0.0;
  for (int n = 2; n <= 9; ++n) {
    const double p = static_cast<double>(zigzag_count(n)) / static_cast<double>(factorial(n));
    var += p * (1.0 - p) / 1e5;
  }
  CHECK(std::fabs(r.estimate - sec_tan_partial(9)) <= 3.0 * std::sqrt(var));
  CHECK(r.std_error == doctest::Approx(std::sqrt(var)).epsilon(0.05));
  CHECK_THROWS_AS(estimate(make(Variant::sec_tan, 1, 10, {{"max_size", "10"}})), ConfigError);
}

TEST_CASE("integral estimator") {
  SUBCASE("f = 0 integrates to exactly 0") {
    const auto r = estimate(make(Variant::integral, 1, 1000, {{"function", "0"}}));
    CHECK(r.estimate == 0.0);
  }
  SUBCASE("f = x on [0, 1]") {
    const auto r = estimate(make(Variant::integral, 2, 1000000,
                                 {{"function", "x"}, {"a", "0"}, {"b", "1"}}));
    CHECK(std::fabs(r.estimate - 0.5) <= 3.0 * r.std_error);
    CHECK(r.reference == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("default curve, continuous") {
    const auto r = estimate(make(Variant::integral, 3, 1000000));
    const double exact = curve_integral(0.0, 8.0);
    CHECK(exact == doctest::Approx(34.85073404210815).epsilon(1e-13));
    CHECK(std::fabs(r.reference - exact) < 1e-6);
    CHECK(std::fabs(r.estimate - exact) <= 3.0 * r.std_error);
  }
  SUBCASE("default curve, rasterized") {
    const auto r = estimate(make(Variant::integral, 4, 1000000, {{"raster_mode", "raster"}}));
    CHECK(r.reference == 34.0);
    CHECK(std::fabs(r.estimate - 34.0) <= 4.0 * r.std_error);
  }
  SUBCASE("bad expressions and bounds") {
    CHECK_THROWS_AS(estimate(make(Variant::integral, 1, 10, {{"function", "x +"}})), ConfigError);
    CHECK_THROWS_AS(estimate(make(Variant::integral, 1, 10, {{"a", "2"}, {"b", "1"}})), ConfigError);
    CHECK_THROWS_AS(estimate(make(Variant::integral, 1, 10, {{"function", "1/(x-1)"}, {"a", "0"},
                                                              {"b", "2"}})),
                    std::exception);
  }
}

TEST_CASE("records do not depend on the worker count") {
  const std::vector<ExperimentConfig> configs{
      make(Variant::sqrt2, 1, 3000, {{"start_phase", "random"}}),
      make(Variant::pi, 1, 20000),
      make(Variant::pi, 1, 20000, {{"sampler_mode", "slime_walk_drift"}}),
      make(Variant::e, 1, 20000),
      make(Variant::zeta, 1, 20000, {{"sampler_mode", "random_tick"}}),
      make(Variant::sec_tan, 1, 5000),
      make(Variant::integral, 1, 20000),
  };
  for (const auto& c : configs) {
    const auto one = estimate(c, {1});
    CAPTURE(to_string(c.variant));
    CHECK(estimate(c, {2}) == one);
    CHECK(estimate(c, {7}) == one);
  }
}

TEST_CASE("95% intervals cover the target in at least 88 of 100 seeds") {
  struct Case {
    ExperimentConfig config;
    double truth;
  };
  const std::vector<Case> cases{
      {make(Variant::pi, 0, 4000, {{"sampler_mode", "uniform_ideal"}, {"raster_mode", "exact_disc"},
                                   {"radius", "50"}}),
       std::numbers::pi},
      {make(Variant::e, 0, 4000), 362880.0 / 133496.0},
      {make(Variant::zeta, 0, 4000), kZeta3},
      {make(Variant::sec_tan, 0, 2000), sec_tan_partial(9)},
      {make(Variant::integral, 0, 4000), curve_integral(0.0, 8.0)},
  };
  for (const auto& c : cases) {
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      ExperimentConfig cfg = c.config;
      cfg.seed = MasterSeed{seed};
      const auto r = estimate(cfg);
      covered += (r.ci_low <= c.truth && c.truth <= r.ci_high) ? 1 : 0;
    }
    CAPTURE(to_string(c.config.variant));
    CHECK(covered >= 88);
  }
}

TEST_CASE("mean absolute error shrinks with trials") {
  for (Variant v : {Variant::pi, Variant::e, Variant::zeta}) {
    ParamMap params;
    double truth = 0.0;
    if (v == Variant::pi) {
      params = {{"sampler_mode", "uniform_ideal"}, {"raster_mode", "exact_disc"}, {"radius", "50"}};
      truth = std::numbers::pi;
    } else if (v == Variant::e) {
      truth = 362880.0 / 133496.0;
    } else {
      params = {{"m", "2"}};
      truth = std::numbers::pi * std::numbers::pi / 6.0;
    }
    double prev = 1e9;
    for (std::uint64_t trials : {1000ULL, 10000ULL, 100000ULL}) {
      double mae = 0.0;
      for (std::uint64_t seed = 1; seed <= 20; ++seed)
        mae += std::fabs(estimate(make(v, seed, trials, params)).estimate - truth) / 20.0;
      CAPTURE(to_string(v));
      CAPTURE(trials);
      CHECK(mae < prev);
      prev = mae;
    }
  }
}

TEST_CASE("scatter points replay the estimator's samples") {
  const auto cfg = make(Variant::pi, 12, 3000, {{"sampler_mode", "uniform_ideal"}});
  const auto points = pi_sample_points(cfg, 5000);
  CHECK(points.size() == 3000);
  const auto inside = std::count_if(points.begin(), points.end(), [](auto& p) { return p.inside; });
  CHECK(4.0 * static_cast<double>(inside) / 3000.0 == estimate(cfg).estimate);
  CHECK(pi_sample_points(cfg, 10).size() == 10);
  CHECK(pi_square_side(cfg) == 23.0);
}
