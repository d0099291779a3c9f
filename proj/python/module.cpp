#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <boost/rational.hpp>

#include "blockmonte/combinatorics.hpp"
#include "blockmonte/errors.hpp"
#include "blockmonte/estimators.hpp"
#include "blockmonte/geometry.hpp"
#include "blockmonte/mechanics.hpp"
#include "blockmonte/numtheory.hpp"
#include "blockmonte/report.hpp"
#include "blockmonte/rng.hpp"
#include "blockmonte/stats.hpp"

namespace py = pybind11;
using namespace blockmonte;

namespace {

py::dict record_dict(const EstimateRecord& r) {
  // Same shape as one JSONL report line.
  return py::module_::import("json").attr("loads")(to_json(r, "python").dump());
}

ExperimentConfig make_config(const std::string& variant, std::uint64_t seed, std::uint64_t trials,
                             const ParamMap& params) {
  return ExperimentConfig{parse_variant(variant), MasterSeed{seed}, trials, params};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monte Carlo estimators driven by block-game mechanics";

  py::register_exception<DegenerateSample>(m, "DegenerateSample", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<RngStream>(m, "RngStream")
      .def(py::init([](std::uint64_t seed, const std::string& label, std::uint64_t index) {
             return RngStream(MasterSeed{seed}, StreamId{label, index});
           }),
           py::arg("seed"), py::arg("label"), py::arg("index") = 0)
      .def("next_u64", &RngStream::next_u64)
      .def("next_unit", &RngStream::next_unit)
      .def("next_int_below", &RngStream::next_int_below, py::arg("n"))
      .def("geometric_trials", &RngStream::geometric_trials, py::arg("p"));

  m.def("hopper_item_count",
        [](double seconds, double period) { return hopper_item_count(HopperTimer{period}, seconds); },
        py::arg("seconds"), py::arg("period") = 0.4);
  m.def("dropper_permutation",
        [](std::uint64_t seed, std::uint64_t index, int slots) {
          RngStream s = derive_stream(MasterSeed{seed}, {"python-dropper", index});
          const Permutation p = dropper_permutation(Dropper{slots}, s);
          return std::vector<int>(p.entries().begin(), p.entries().end());
        },
        py::arg("seed"), py::arg("index") = 0, py::arg("slots") = 9);

  m.def("cell_in_disc", [](std::int64_t x, std::int64_t z, double r) { return cell_in_disc({x, z}, r); },
        py::arg("x"), py::arg("z"), py::arg("radius"));
  m.def("rasterize_circle",
        [](std::int64_t radius) {
          std::vector<std::pair<std::int64_t, std::int64_t>> out;
          for (const auto& c : rasterize_circle(radius).cells()) out.emplace_back(c.x, c.z);
          return out;
        },
        py::arg("radius"));
  m.def("circle_text", [](std::int64_t radius) { return rasterize_circle(radius).to_text(); }, py::arg("radius"));
  m.def("archimedes_bounds",
        [](int doublings) {
          const PiBounds b = archimedes_bounds(doublings);
          return std::pair{b.lower, b.upper};
        },
        py::arg("doublings"));
  m.def("two_squares", &two_squares, py::arg("n"));

  m.def("is_derangement", [](const std::vector<int>& p) { return is_derangement(std::span<const int>(p)); });
  m.def("is_alternating", [](const std::vector<int>& p) { return is_alternating(std::span<const int>(p)); });
  m.def("derangement_count", &derangement_count, py::arg("n"));
  m.def("zigzag_count", &zigzag_count, py::arg("n"));

  m.def("gcd_tuple", [](const std::vector<std::uint64_t>& v) { return gcd_tuple(v); });
  m.def("zeta_partial", &zeta_partial, py::arg("s"), py::arg("terms"));
  m.def("euler_product_partial", &euler_product_partial, py::arg("s"), py::arg("prime_bound"));
  m.def("coprime_probability_exact",
        [](int m_, std::uint64_t bound) {
          const Fraction f = coprime_probability_exact(m_, bound);
          return std::pair{f.numerator(), f.denominator()};
        },
        py::arg("m"), py::arg("bound"));

  m.def("wilson_ci",
        [](std::uint64_t s, std::uint64_t n, double z) {
          const Interval i = wilson_ci(s, n, z);
          return std::pair{i.low, i.high};
        },
        py::arg("successes"), py::arg("trials"), py::arg("z") = 1.96);
  m.def("relative_error", &relative_error, py::arg("estimate"), py::arg("reference"));

  m.def("estimate",
        [](const std::string& variant, std::uint64_t seed, std::uint64_t trials, const ParamMap& params,
           unsigned workers) {
          const ExperimentConfig config = make_config(variant, seed, trials, params);
          EstimateRecord r;
          {
            py::gil_scoped_release release;
            r = estimate(config, {workers});
          }
          return record_dict(r);
        },
        py::arg("variant"), py::arg("seed") = 0, py::arg("trials") = 10000, py::arg("params") = ParamMap{},
        py::arg("workers") = 1);
  m.def("estimate_from_counts",
        [](const std::string& variant, std::uint64_t a, std::uint64_t b, const ParamMap& params) {
          return record_dict(estimate_from_counts(parse_variant(variant), a, b, params));
        },
        py::arg("variant"), py::arg("numerator"), py::arg("denominator"), py::arg("params") = ParamMap{});
}
