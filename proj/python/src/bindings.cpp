#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "transurf/catalog.hpp"
#include "transurf/errors.hpp"
#include "transurf/expr.hpp"
#include "transurf/geometry.hpp"
#include "transurf/spec_doc.hpp"
#include "transurf/verify.hpp"

namespace py = pybind11;
using namespace transurf;

namespace {

constexpr Interval kEverywhere{-std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity()};

SmoothFn1 fn(const std::string& sexpr) { return {parse_expr(sexpr), kEverywhere}; }

Metric metric(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean();
  if (name == "lorentzian") return Metric::lorentzian();
  throw SpecError("metric must be 'euclidean' or 'lorentzian'");
}

std::string metric_name(const Metric& m) {
  return m.signature == Signature::Euclidean ? "euclidean" : "lorentzian";
}

GraphAxis axis(const std::string& name) {
  if (name == "z") return GraphAxis::Z;
  if (name == "x") return GraphAxis::X;
  throw SpecError("axis must be 'z' or 'x'");
}

Family family(const std::string& id) {
  const auto f = family_from_id(id);
  if (!f) throw SpecError("unknown family '" + id + "'");
  return *f;
}

py::dict sample_dict(const CurvatureSample& c) {
  py::dict d;
  d["s"] = c.s;
  d["t"] = c.t;
  d["K"] = c.K;
  d["H"] = c.H;
  d["EGmF2"] = c.EGmF2;
  d["character"] = to_string(c.character);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature machinery for translation and homothetical surfaces";
  m.attr("__version__") = std::string(kToolVersion);

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
  py::register_exception<CausalityError>(m, "CausalityError", base.ptr());
  py::register_exception<AllDegenerateError>(m, "AllDegenerateError", base.ptr());
  py::register_exception<SpecError>(m, "SpecError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def(
      "jet_eval",
      [](const std::string& sexpr, double x) {
        const UniJet3 j = fn(sexpr).jet(x);
        return py::make_tuple(j.v, j.d1, j.d2, j.d3);
      },
      py::arg("expr"), py::arg("x"), "Value and first three derivatives of a univariate S-expression.");

  py::class_<Surface>(m, "Surface")
      .def_property_readonly("domain",
                             [](const Surface& S) {
                               const Rect& r = S.domain();
                               return py::make_tuple(py::make_tuple(r.s.lo, r.s.hi),
                                                     py::make_tuple(r.t.lo, r.t.hi));
                             })
      .def("embed", [](const Surface& S, double s, double t) {
        const Vec3 p = S.embed(s, t);
        return py::make_tuple(p[0], p[1], p[2]);
      });

  m.def(
      "parse_surface_spec",
      [](const std::string& text) {
        ParsedSpec p = parse_surface_spec(text);
        return py::make_tuple(std::move(p.surface), metric_name(p.metric));
      },
      py::arg("text"));
  m.def("serialize_surface_spec",
        [](const Surface& S, const std::string& met) { return serialize_surface_spec(S, metric(met)); },
        py::arg("surface"), py::arg("metric") = "euclidean");

  m.def(
      "make_family",
      [](const std::string& id, const std::map<std::string, double>& params) {
        return make_family({family(id), params, std::nullopt});
      },
      py::arg("family"), py::arg("params") = std::map<std::string, double>{});
  m.def("family_metric", [](const std::string& id) { return metric_name(family_metric(family(id))); });
  m.def("list_families", [] {
    py::list out;
    for (const auto& f : list_families()) {
      py::dict d;
      d["family"] = std::string(family_id(f.name));
      d["params"] = f.params;
      d["metric"] = metric_name(family_metric(f.name));
      out.append(d);
    }
    return out;
  });

  m.def(
      "fundamental_forms",
      [](const Surface& S, const std::string& met, double s, double t) {
        const FundamentalForms ff = fundamental_forms(S, metric(met), s, t);
        py::dict d;
        d["E"] = ff.E;
        d["F"] = ff.F;
        d["G"] = ff.G;
        d["l"] = ff.l;
        d["m"] = ff.m;
        d["n"] = ff.n;
        d["N"] = py::make_tuple(ff.N[0], ff.N[1], ff.N[2]);
        d["character"] = to_string(ff.character);
        d["eps"] = ff.eps;
        return d;
      },
      py::arg("surface"), py::arg("metric"), py::arg("s"), py::arg("t"));
  m.def("gauss_curvature",
        [](const Surface& S, const std::string& met, double s, double t) {
          return gauss_curvature(S, metric(met), s, t);
        },
        py::arg("surface"), py::arg("metric"), py::arg("s"), py::arg("t"));
  m.def("mean_curvature",
        [](const Surface& S, const std::string& met, double s, double t) {
          return mean_curvature(S, metric(met), s, t);
        },
        py::arg("surface"), py::arg("metric"), py::arg("s"), py::arg("t"));

  m.def(
      "translation_gauss_closed",
      [](const std::string& f1, const std::string& f2, const std::string& g1, const std::string& g2,
         double s, double t, const std::string& met) {
        return translation_gauss_closed(fn(f1), fn(f2), fn(g1), fn(g2), metric(met), s, t);
      },
      py::arg("f1"), py::arg("f2"), py::arg("g1"), py::arg("g2"), py::arg("s"), py::arg("t"),
      py::arg("metric") = "euclidean");
  m.def(
      "homothetical_gauss_closed",
      [](const std::string& f, const std::string& g, double x, double y, const std::string& met,
         const std::string& ax) {
        return homothetical_gauss_closed(fn(f), fn(g), metric(met), axis(ax), x, y);
      },
      py::arg("f"), py::arg("g"), py::arg("x"), py::arg("y"), py::arg("metric") = "euclidean",
      py::arg("axis") = "z");
  m.def("homothetical_minimal_residual",
        [](const std::string& f, const std::string& g, double x, double y) {
          return homothetical_minimal_residual(fn(f), fn(g), x, y);
        });
  m.def("homothetical_flat_residual",
        [](const std::string& f, const std::string& g, double x, double y) {
          return homothetical_flat_residual(fn(f), fn(g), x, y);
        });
  m.def("curve_planarity_residual",
        [](const std::string& cx, const std::string& cy, const std::string& cz, double t) {
          return curve_planarity_residual({fn(cx), fn(cy), fn(cz)}, t);
        });

  m.def(
      "sample_curvature",
      [](const Surface& S, const std::string& met, int ns, int nt, unsigned threads) {
        const SampleSet set = sample_curvature(S, metric(met), grid_over(S.domain(), ns, nt), threads);
        py::list samples;
        for (const auto& c : set.samples) samples.append(sample_dict(c));
        return py::make_tuple(samples, set.skipped_degenerate);
      },
      py::arg("surface"), py::arg("metric"), py::arg("ns"), py::arg("nt"), py::arg("threads") = 1);
  m.def(
      "check_constancy",
      [](const Surface& S, const std::string& met, const std::string& quantity, int ns, int nt,
         std::optional<double> expected, double tol) {
        const SampleSet set = sample_curvature(S, metric(met), grid_over(S.domain(), ns, nt));
        const ConstancyReport r =
            check_constancy(set, quantity == "H" ? Quantity::H : Quantity::K, expected, tol);
        py::dict d;
        d["quantity"] = to_string(r.quantity);
        d["mean"] = r.mean;
        d["max_abs_dev"] = r.max_abs_dev;
        d["expected"] = r.expected;
        d["tol"] = r.tol;
        d["verdict"] = to_string(r.verdict);
        d["n_samples"] = r.n_samples;
        d["skipped_degenerate"] = r.skipped_degenerate;
        return d;
      },
      py::arg("surface"), py::arg("metric"), py::arg("quantity"), py::arg("ns"), py::arg("nt"),
      py::arg("expected") = std::nullopt, py::arg("tol") = kTolK);
  m.def(
      "fd_oracle",
      [](const Surface& S, const std::string& met, double s, double t, double h) {
        const CurvaturePair p = fd_oracle(S, metric(met), s, t, h);
        return py::make_tuple(p.K, p.H);
      },
      py::arg("surface"), py::arg("metric"), py::arg("s"), py::arg("t"), py::arg("h") = 1e-3);

  m.def(
      "ode_crosscheck",
      [](const std::string& kind, const std::map<std::string, double>& p, double lo, double hi,
         int steps) {
        auto get = [&](const char* k, double d) {
          auto it = p.find(k);
          return it == p.end() ? d : it->second;
        };
        OdeProblem ode;
        if (kind == "tan") {
          ode = TanOde{get("a", 1), get("k", 1), get("d", 0)};
        } else if (kind == "exp") {
          ode = ExpBranchOde{get("b", 1), get("c", 1), get("p", 1), get("q", 1)};
        } else if (kind == "power") {
          ode = PowerBranchOde{get("a", 2), get("b", 1), get("c", 1), get("p", 1), get("q", 1)};
        } else {
          throw SpecError("ode must be 'tan', 'exp' or 'power'");
        }
        return ode_crosscheck(ode, {lo, hi}, steps);
      },
      py::arg("ode"), py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("steps"));

  m.def(
      "nonexistence_probe",
      [](const std::string& problem, double K0, std::uint64_t seed, int budget, unsigned threads) {
        const auto kind = probe_from_id(problem);
        if (!kind) throw SpecError("unknown probe problem '" + problem + "'");
        const ProbeResult r = nonexistence_probe({*kind, K0}, seed, budget, threads);
        py::dict d;
        d["problem"] = r.problem;
        d["K0"] = r.K0;
        d["best_residual"] = r.best_residual;
        d["iterations"] = r.iterations;
        d["seed"] = r.seed;
        d["budget"] = r.budget;
        d["params"] = r.params;
        return d;
      },
      py::arg("problem"), py::arg("K0"), py::arg("seed"), py::arg("budget"), py::arg("threads") = 1);
}
