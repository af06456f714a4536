// Python bindings for the admex core: exact rationals, the exponent
// calculus, the derivation pipeline and the counting lab.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "admex/derive.hpp"
#include "admex/exponent.hpp"
#include "admex/lab.hpp"
#include "admex/rational.hpp"
#include "admex/report.hpp"

namespace py = pybind11;
using namespace admex;

namespace {

Rational rational_from_object(const py::object& obj) {
  if (py::isinstance<Rational>(obj)) return obj.cast<Rational>();
  if (py::isinstance<py::int_>(obj)) {
    return Rational::from_fraction_string(py::str(obj).cast<std::string>());
  }
  std::string text = py::str(obj).cast<std::string>();
  if (text.find('/') != std::string::npos) return Rational::from_fraction_string(text);
  return parse_decimal(text);
}

py::object to_py_int(const mpz_class& z) {
  return py::module_::import("builtins").attr("int")(z.get_str());
}

DerivationConfig make_config(const std::string& mode, int depth, int round_places,
                             int workers) {
  DerivationConfig cfg;
  cfg.mode = mode_from_name(mode);
  cfg.dyadic_depth = depth;
  cfg.round_places = round_places;
  cfg.workers = workers;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact admissible-exponent engine for biquadratic smooth Weyl sums";
  m.attr("__version__") = std::string(kToolVersion);

  py::register_exception<ParseError>(m, "AdmexParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "AdmexDomainError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<Rational>(m, "Rational")
      .def(py::init([](const py::object& o) { return rational_from_object(o); }))
      .def(py::init([](const py::object& num, const py::object& den) {
             return rational_from_object(num) / rational_from_object(den);
           }))
      .def_property_readonly("numerator", [](const Rational& r) { return to_py_int(r.num()); })
      .def_property_readonly("denominator", [](const Rational& r) { return to_py_int(r.den()); })
      .def("__str__", &Rational::str)
      .def("__repr__", [](const Rational& r) { return "Rational('" + r.str() + "')"; })
      .def("__float__", &Rational::to_double)
      .def("__eq__", [](const Rational& a, const py::object& b) { return a == rational_from_object(b); })
      .def("__lt__", [](const Rational& a, const py::object& b) { return a < rational_from_object(b); })
      .def("__le__", [](const Rational& a, const py::object& b) { return a <= rational_from_object(b); })
      .def("__gt__", [](const Rational& a, const py::object& b) { return a > rational_from_object(b); })
      .def("__ge__", [](const Rational& a, const py::object& b) { return a >= rational_from_object(b); })
      .def("__add__", [](const Rational& a, const py::object& b) { return a + rational_from_object(b); })
      .def("__sub__", [](const Rational& a, const py::object& b) { return a - rational_from_object(b); })
      .def("__mul__", [](const Rational& a, const py::object& b) { return a * rational_from_object(b); })
      .def("__truediv__", [](const Rational& a, const py::object& b) { return a / rational_from_object(b); })
      .def("__neg__", [](const Rational& a) { return -a; })
      .def("__hash__", [](const Rational& a) { return py::hash(py::str(a.str())); });

  m.def("parse_decimal", [](const std::string& s) { return parse_decimal(s); });
  m.def("render_ceiling",
        [](const py::object& x, int places) { return render_ceiling(rational_from_object(x), places); },
        py::arg("x"), py::arg("places"));
  m.def("render_floor",
        [](const py::object& x, int places) { return render_floor(rational_from_object(x), places); },
        py::arg("x"), py::arg("places"));

  py::class_<Provenance>(m, "Provenance")
      .def_readonly("label", &Provenance::label)
      .def_readonly("parents", &Provenance::parents)
      .def_readonly("feedback", &Provenance::feedback);

  py::class_<ExponentRecord>(m, "ExponentRecord")
      .def_readonly("s", &ExponentRecord::s)
      .def_readonly("delta", &ExponentRecord::delta)
      .def_property_readonly("kind",
                             [](const ExponentRecord& r) { return std::string(kind_name(r.kind)); })
      .def_readonly("strict", &ExponentRecord::strict)
      .def_readonly("provenance", &ExponentRecord::provenance)
      .def("__repr__", [](const ExponentRecord& r) {
        return "ExponentRecord(s=" + compact_str(r.s) + ", delta=" + r.delta.str() + ")";
      });

  py::class_<ExponentTable>(m, "ExponentTable")
      .def(py::init<>())
      .def("records", &ExponentTable::records)
      .def("find",
           [](const ExponentTable& t, const py::object& s) -> std::optional<ExponentRecord> {
             const ExponentRecord* rec = t.find(rational_from_object(s));
             if (!rec) return std::nullopt;
             return *rec;
           })
      .def("interpolate",
           [](const ExponentTable& t, const py::object& s) {
             return interpolate(t, rational_from_object(s));
           })
      .def("insert",
           [](ExponentTable& t, const py::object& s, const py::object& delta,
              const std::string& kind, bool strict) {
             t.insert(make_record(rational_from_object(s), rational_from_object(delta),
                                  kind_from_name(kind), strict, {"manual", {}}));
           },
           py::arg("s"), py::arg("delta"), py::arg("kind") = "interpolated",
           py::arg("strict") = false)
      .def("__len__", &ExponentTable::size);

  m.def("baseline_table", &baseline_table);

  m.def("check_recursion_hypothesis",
        [](const py::object& u, const py::object& low, const py::object& high) {
          return check_recursion_hypothesis({rational_from_object(u), rational_from_object(low),
                                             rational_from_object(high)});
        },
        py::arg("u"), py::arg("delta_10_minus_u"), py::arg("delta_12_minus_2u"));
  m.def("recursion_infimum",
        [](const py::object& u, const py::object& low, const py::object& high) {
          return recursion_infimum({rational_from_object(u), rational_from_object(low),
                                    rational_from_object(high)});
        },
        py::arg("u"), py::arg("delta_10_minus_u"), py::arg("delta_12_minus_2u"));
  m.def("phi0",
        [](const py::object& u, const py::object& low, const py::object& high) {
          return phi0({rational_from_object(u), rational_from_object(low),
                       rational_from_object(high)});
        },
        py::arg("u"), py::arg("delta_10_minus_u"), py::arg("delta_12_minus_2u"));
  m.def("kz_threshold", [](const py::object& s, const py::object& delta) {
    KzThreshold th = kz_threshold(rational_from_object(s), rational_from_object(delta));
    return py::make_tuple(th.u0, th.valid, th.superseded);
  });

  m.def("dyadic_pass",
        [](const std::string& mode, int depth, int round_places) {
          return dyadic_pass(make_config(mode, depth, round_places, 1));
        },
        py::arg("mode") = "paper", py::arg("depth") = 3, py::arg("round_places") = 7);
  m.def("derive_at", [](const ExponentTable& t, const py::object& s) {
    return derive_at(t, rational_from_object(s));
  });
  m.def("curve_value",
        [](const ExponentTable& t, const py::object& s, const std::string& mode,
           int round_places) {
          return curve_value(t, rational_from_object(s),
                             make_config(mode, 3, round_places, 1));
        },
        py::arg("table"), py::arg("s"), py::arg("mode") = "paper",
        py::arg("round_places") = 7);
  m.def("compare_direct", [](const py::object& t) {
    DirectComparison c = compare_direct(rational_from_object(t));
    return py::make_tuple(c.direct, c.direct_majorant, c.interpolated);
  });
  m.def("optimize_kz",
        [](const ExponentTable& t, const std::string& mode, int workers) {
          DerivationConfig cfg = make_config(mode, 3, 7, workers);
          KzOptimum best = optimize_kz(t, cfg);
          return py::make_tuple(best.s_star, best.u_star, best.superseded);
        },
        py::arg("table"), py::arg("mode") = "paper", py::arg("workers") = 1);
  m.def("fixed_point",
        [](const std::string& mode, int depth, int max_rounds) {
          FixedPointResult res = fixed_point(make_config(mode, depth, 7, 1), max_rounds);
          return py::make_tuple(res.table, res.rounds, res.converged);
        },
        py::arg("mode") = "paper", py::arg("depth") = 3, py::arg("max_rounds") = 4);
  m.def("decay_constant", []() { return decay_constant(); });
  m.def("decay_constant_enclosure", []() {
    Log2Enclosure e = decay_constant_enclosure();
    return py::make_tuple(e.lo, e.hi);
  });

  m.def("smooth_set", [](std::int64_t P, std::int64_t R) {
    return smooth_set(P, R).elements;
  });
  m.def("restricted_smooth_set", [](std::int64_t L, std::int64_t pi, std::int64_t R) {
    return restricted_smooth_set(L, pi, R).elements;
  });
  m.def("moment_count",
        [](std::int64_t P, std::int64_t R, int k, std::uint64_t budget, int workers) {
          LabOptions opts;
          opts.budget = budget;
          opts.workers = workers;
          return moment_count(P, R, k, opts).count;
        },
        py::arg("P"), py::arg("R"), py::arg("k"), py::arg("budget") = 20'000'000,
        py::arg("workers") = 1);
  m.def("psi", [](std::int64_t z, std::int64_t h, std::int64_t mm) {
    return to_py_int(psi(z, h, mm));
  });
  m.def("psi_direct", [](std::int64_t z, std::int64_t h, std::int64_t mm) {
    return to_py_int(psi_direct(z, h, mm));
  });
  m.def("difference_substitution_check", [](std::int64_t P, std::int64_t u) {
    SubstitutionCheck c = difference_substitution_check(P, u);
    return py::make_tuple(c.pair_count, c.image_count, c.identity_ok);
  });
  m.def("empirical_exponent",
        [](const std::vector<std::int64_t>& bounds, std::optional<std::int64_t> R, int k) {
          return empirical_exponent(bounds, R, k).slope;
        },
        py::arg("bounds"), py::arg("R") = std::nullopt, py::arg("k") = 2);

  m.def("table_json",
        [](const std::string& mode, int depth, int places) {
          DerivationConfig cfg = make_config(mode, depth, 7, 1);
          ExponentTable table = dyadic_pass(cfg);
          KzOptimum best = optimize_kz(table, cfg);
          Report report;
          report.metadata = run_metadata(cfg, places);
          for (const ExponentRecord& rec : table.records()) {
            report.rows.push_back(row_from_record(rec, places));
          }
          Provenance prov{"keil-zhao(s=" + compact_str(best.s_star) + ")",
                          {best.s_star},
                          false};
          report.rows.push_back(row_from_record(
              make_record(best.u_star, Rational(0), RecordKind::keil_zhao, true, prov),
              places));
          return to_json(report);
        },
        py::arg("mode") = "paper", py::arg("depth") = 3, py::arg("places") = 7);
}
