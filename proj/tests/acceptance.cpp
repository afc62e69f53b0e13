// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "transurf/catalog.hpp"
#include "transurf/errors.hpp"
#include "transurf/spec_doc.hpp"
#include "transurf/verify.hpp"

#ifndef TRANSURF_CLI_PATH
#define TRANSURF_CLI_PATH "transurf"
#endif

using namespace transurf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int run(const std::string& cmd) {
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string cli() { return TRANSURF_CLI_PATH; }

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// ---- criteria --------------------------------------------------------------

Outcome scherk_minimality() {
  write("scherk.json", R"js({"kind":"family","family":"scherk","params":{"a":1},"domain":[[-1.4,1.4],[-1.4,1.4]]})js");
  const int rc = run(cli() + " verify scherk.json --quantity H --expected 0 --tol 1e-10 --grid 21x21");
  return {rc == 0, "exit code " + std::to_string(rc)};
}

Outcome helicoid_minimality() {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double b = uniform(rng, -1, 1), c = uniform(rng, 0.5, 2), d = uniform(rng, -1, 1);
    const Surface S = make_family({Family::Helicoid, {{"b", b}, {"c", c}, {"d", d}}, std::nullopt});
    for (const auto& n : sample_curvature(S, Metric::euclidean(), grid_over(S.domain(), 21, 21)).samples)
      worst = std::max(worst, std::abs(n.H));
  }
  return {worst < 1e-10, "max |H| " + fmt(worst)};
}

Outcome flat_homothetical() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  auto sweep = [&](const FamilySpec& spec) {
    const Surface S = make_family(spec);
    const SampleSet set = sample_curvature(S, Metric::euclidean(), grid_over(S.domain(), 21, 21));
    if (set.skipped_degenerate != 0) worst = INFINITY;
    for (const auto& n : set.samples) worst = std::max(worst, std::abs(n.K));
  };
  for (int k = 0; k < 10; ++k) {
    sweep({Family::ExpHomothetical,
           {{"a", uniform(rng, 0.2, 2)}, {"b", uniform(rng, 0.2, 1.5)}, {"c", uniform(rng, 0.2, 1.5)}},
           std::nullopt});
  }
  for (int k = 0; k < 10; ++k) {
    double m = 0.0;
    do m = uniform(rng, -3, 4);
    while (std::abs(m) < 0.2 || std::abs(m - 1) < 0.2);
    const double sb = rng() % 2 ? 1 : -1, sc = rng() % 2 ? 1 : -1;
    sweep({Family::PowerHomothetical,
           {{"b", sb * uniform(rng, 0.3, 1.5)}, {"c", sc * uniform(rng, 0.3, 1.5)},
            {"d", uniform(rng, 1, 3)}, {"e", uniform(rng, 1, 3)}, {"m", m}},
           std::nullopt});
  }
  return {worst < 1e-9, "max |K| " + fmt(worst)};
}

Expr random_poly(std::mt19937_64& rng) {
  const int degree = 1 + static_cast<int>(rng() % 5);
  std::vector<double> c(degree + 1);
  for (double& v : c) v = uniform(rng, -0.8, 0.8);
  return ex::polynomial(c);
}

Outcome structural_m_zero() {
  std::mt19937_64 rng(4);
  const Rect dom{{-1, 1}, {-1, 1}};
  double worst_m = 0.0, worst_rel = 0.0;
  std::size_t nodes = 0;
  for (int k = 0; k < 20; ++k) {
    const TranslationNormalForm nf{{random_poly(rng), dom.s}, {random_poly(rng), dom.s},
                                   {random_poly(rng), dom.t}, {random_poly(rng), dom.t}};
    const Surface S(make_translation(nf), dom);
    const GridSpec g = grid_over(dom, 11, 11);
    for (int i = 0; i < g.ns; ++i) {
      for (int j = 0; j < g.nt; ++j) {
        const double s = g.s_at(i), t = g.t_at(j);
        FundamentalForms ff;
        try {
          ff = fundamental_forms(S, Metric::euclidean(), s, t);
        } catch (const DegenerateError&) {
          continue;
        }
        ++nodes;
        worst_m = std::max(worst_m, std::abs(ff.m));
        const double closed = translation_gauss_closed(nf.f1, nf.f2, nf.g1, nf.g2, Metric::euclidean(), s, t);
        worst_rel = std::max(worst_rel, rel_err(closed, gauss_curvature(ff)));
      }
    }
  }
  return {worst_m == 0.0 && worst_rel < 1e-9 && nodes > 2000,
          "max |m| " + fmt(worst_m) + ", max rel dK " + fmt(worst_rel) + " over " + std::to_string(nodes) +
              " nodes"};
}

// Quintic Bezier curve in power-basis form on [0, 1].
Curve3 random_bezier(std::mt19937_64& rng) {
  constexpr int n = 5;
  const double binom[n + 1] = {1, 5, 10, 10, 5, 1};
  std::array<Expr, 3> comp{ex::c(0), ex::c(0), ex::c(0)};
  for (int axis = 0; axis < 3; ++axis) {
    double P[n + 1];
    for (double& p : P) p = uniform(rng, -1, 1);
    std::vector<double> coeff(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
      for (int j = k; j <= n; ++j) {
        const double sign = (j - k) % 2 ? -1.0 : 1.0;
        double c = 1;
        for (int r = 0; r < j - k; ++r) c = c * (n - k - r) / (r + 1);
        coeff[j] += P[k] * binom[k] * c * sign;
      }
    }
    comp[axis] = ex::polynomial(coeff);
  }
  return make_curve(comp[0], comp[1], comp[2], {0, 1});
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  Vec3 v{N(rng), N(rng), N(rng)};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Curve3 line(const Vec3& d, Interval dom) {
  return make_curve(ex::c(d[0]) * ex::x(), ex::c(d[1]) * ex::x(), ex::c(d[2]) * ex::x(), dom);
}

Outcome flat_classification() {
  std::mt19937_64 rng(5);
  const Rect dom{{0, 1}, {0, 1}};
  double worst_angle = 0.0;
  int wrong = 0;
  for (int k = 0; k < 20; ++k) {
    const Vec3 d = random_unit(rng);
    const Curve3 base = random_bezier(rng);
    const bool straight_alpha = k % 2 == 0;
    const Surface S(straight_alpha ? Translation{line(d, dom.s), base} : Translation{base, line(d, dom.t)}, dom);
    const FlatClassification fc = classify_flat_translation(S, grid_over(dom, 11, 11));
    if (fc.kind != FlatKind::CylindricalAlong) {
      ++wrong;
      continue;
    }
    const double dot = std::abs(fc.direction[0] * d[0] + fc.direction[1] * d[1] + fc.direction[2] * d[2]);
    const double cross = std::hypot(fc.direction[1] * d[2] - fc.direction[2] * d[1],
                                    fc.direction[2] * d[0] - fc.direction[0] * d[2],
                                    fc.direction[0] * d[1] - fc.direction[1] * d[0]);
    worst_angle = std::max(worst_angle, std::atan2(cross, dot));
  }
  for (int k = 0; k < 5; ++k) {
    const Surface P(Translation{line(random_unit(rng), dom.s), line(random_unit(rng), dom.t)}, dom);
    if (classify_flat_translation(P, grid_over(dom, 11, 11)).kind != FlatKind::Plane) ++wrong;
  }
  return {wrong == 0 && worst_angle < 1e-8,
          std::to_string(wrong) + " misclassified, max angle " + fmt(worst_angle) + " rad"};
}

struct CorpusEntry {
  std::string name;
  Surface surface;
  Metric metric;
};

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (const FamilySpec& f : list_families()) {
    out.push_back({std::string(family_id(f.name)), make_family(f), family_metric(f.name)});
  }
  const char* docs[][2] = {
      {"sphere", R"js({"kind":"generic","X":["(mul (cos s) (cos t))","(mul (cos s) (sin t))","(sin s)"],"domain":[[-1.2,1.2],[-3,3]]})js"},
      {"helicoid_graph", R"js({"kind":"homothetical","f":"x","g":"(tan y)","domain":[[-1,1],[-0.7,0.7]]})js"},
      {"xy_graph", R"js({"kind":"homothetical","f":"x","g":"y","domain":[[0.5,1.5],[0.5,1.5]]})js"},
      {"bumpy_translation", R"js({"kind":"translation","f1":"(mul 0.5 (sin x))","f2":"(mul x x)","g1":"(mul 0.3 y y)","g2":"(cos y)","domain":[[-1,1],[-1,1]]})js"},
      {"timelike_graph", R"js({"kind":"homothetical","metric":"lorentzian","axis":"x","f":"(mul 2 (exp y))","g":"(add 1 (mul 0.1 z z))","domain":[[0,0.5],[-0.5,0.5]]})js"},
  };
  for (const auto& d : docs) {
    ParsedSpec p = parse_surface_spec(d[1]);
    out.push_back({d[0], std::move(p.surface), p.metric});
  }
  return out;
}

// Unit-scale random surfaces: generic polynomial patches, translation and
// homothetical surfaces with polynomial generators.
void add_random_corpus(std::vector<CorpusEntry>& out) {
  std::mt19937_64 rng(6);
  const Rect unit{{-1, 1}, {-1, 1}};
  auto small_poly = [&] {
    std::vector<double> c(4);
    for (double& v : c) v = uniform(rng, -0.5, 0.5);
    return ex::polynomial(c);
  };
  for (int k = 0; k < 4; ++k) {
    const Expr z = small_poly() + ex::c(uniform(rng, -0.5, 0.5)) * ex::s() * ex::t() +
                   ex::polynomial(std::vector<double>{0, uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)}, ex::t());
    out.push_back({"random_graph_" + std::to_string(k), Surface(GenericParametric{{ex::s(), ex::t(), z}}, unit),
                   Metric::euclidean()});
  }
  for (int k = 0; k < 3; ++k) {
    const TranslationNormalForm nf{{small_poly(), unit.s}, {small_poly(), unit.s}, {small_poly(), unit.t},
                                   {small_poly(), unit.t}};
    out.push_back({"random_translation_" + std::to_string(k), Surface(make_translation(nf), unit),
                   Metric::euclidean()});
  }
  for (int k = 0; k < 3; ++k) {
    const Expr f = ex::c(1) + small_poly(), g = ex::c(1) + small_poly();
    out.push_back({"random_homothetical_" + std::to_string(k),
                   Surface(HomotheticalGraph{{f, unit.s}, {g, unit.t}, GraphAxis::Z}, unit), Metric::euclidean()});
  }
}

Outcome oracle_agreement() {
  std::vector<CorpusEntry> entries = corpus();
  add_random_corpus(entries);
  std::mt19937_64 rng(9);
  double worst_K = 0.0, worst_H = 0.0;
  std::string worst_name;
  for (const CorpusEntry& c : entries) {
    const Rect& r = c.surface.domain();
    for (int k = 0; k < 5; ++k) {
      const double s = r.s.lo + uniform(rng, 0.1, 0.9) * r.s.width();
      const double t = r.t.lo + uniform(rng, 0.1, 0.9) * r.t.width();
      const FundamentalForms ff = fundamental_forms(c.surface, c.metric, s, t);
      const CurvaturePair fd = fd_oracle(c.surface, c.metric, s, t, 1e-3);
      const double dK = std::abs(gauss_curvature(ff) - fd.K), dH = std::abs(mean_curvature(ff) - fd.H);
      if (std::max(dK, dH) > std::max(worst_K, worst_H)) worst_name = c.name;
      worst_K = std::max(worst_K, dK);
      worst_H = std::max(worst_H, dH);
    }
  }
  return {worst_K < kTolOracle && worst_H < kTolOracle,
          std::to_string(entries.size()) + " surfaces, max dK " + fmt(worst_K) + ", max dH " + fmt(worst_H) +
              " (worst: " + worst_name + ")"};
}

Outcome ode_crosschecks() {
  struct Case {
    const char* name;
    OdeProblem ode;
    Interval interval;
  };
  const Case cases[] = {{"tan", TanOde{1, 1, 0}, {0, 1.2}},
                        {"exp", ExpBranchOde{1, 1, 1, 1}, {0, 1}},
                        {"power", PowerBranchOde{2, 1, 1, 1, 1}, {0, 0.5}}};
  Outcome o;
  for (const Case& c : cases) {
    const double err = ode_crosscheck(c.ode, c.interval, 10000);
    const double ratio = ode_crosscheck(c.ode, c.interval, 100) / ode_crosscheck(c.ode, c.interval, 200);
    o.pass = o.pass && err < 1e-8 && ratio >= 8.0;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + c.name + " err " + fmt(err) + " ratio " + fmt(ratio);
  }
  const int rc = run(cli() + " crosscheck --ode tan --steps 10000 --tol 1e-8");
  o.pass = o.pass && rc == 0;
  return o;
}

struct LorentzStats {
  double worst_rel = 0.0;
  int causal_mismatches = 0;
  int character_mismatches = 0;
  std::size_t nodes = 0;
};

// Closed forms against the pipeline, and the printed causal constraint
// against the pipeline's accept/reject decision, at every node.
void lorentz_graph(const Surface& S, GraphAxis axis, LorentzStats& st) {
  const auto& h = std::get<HomotheticalGraph>(S.shape());
  const Metric L = Metric::lorentzian();
  const GridSpec g = grid_over(S.domain(), 9, 9);
  for (int i = 0; i < g.ns; ++i) {
    for (int j = 0; j < g.nt; ++j) {
      const double u = g.s_at(i), v = g.t_at(j);
      const UniJet3 f = h.f.jet(u), gg = h.g.jet(v);
      const double a = f.d1 * f.d1 * gg.v * gg.v, b = f.v * f.v * gg.d1 * gg.d1;
      const bool ok = axis == GraphAxis::Z ? 1 - a - b > 0 : 1 + b - a < 0;
      FundamentalForms ff;
      bool threw = false;
      try {
        ff = fundamental_forms(S, L, u, v);
      } catch (const CausalityError&) {
        threw = true;
      }
      if (threw == ok) ++st.causal_mismatches;
      if (threw) continue;
      ++st.nodes;
      const Character want = axis == GraphAxis::Z ? Character::Spacelike : Character::Timelike;
      if (ff.character != want) ++st.character_mismatches;
      st.worst_rel = std::max(st.worst_rel, rel_err(homothetical_gauss_closed(f, gg, Signature::Lorentzian, axis),
                                                    gauss_curvature(ff)));
      st.worst_rel = std::max(st.worst_rel, rel_err(homothetical_mean_closed(f, gg, Signature::Lorentzian, axis),
                                                    mean_curvature(ff)));
    }
  }
}

// alpha = (s, 0, f(s)) planar; closed form with the reconstructed denominator.
void lorentz_translation(const TranslationNormalForm& nf, const Rect& dom, Character want, LorentzStats& st) {
  const Surface S(make_translation(nf), dom);
  const GridSpec g = grid_over(dom, 9, 9);
  for (int i = 0; i < g.ns; ++i) {
    for (int j = 0; j < g.nt; ++j) {
      const double s = g.s_at(i), t = g.t_at(j);
      const FundamentalForms ff = fundamental_forms(S, Metric::lorentzian(), s, t);
      ++st.nodes;
      if (ff.character != want) ++st.character_mismatches;
      const UniJet3 f = nf.f2.jet(s), g1 = nf.g1.jet(t), g2 = nf.g2.jet(t);
      const double den = 1 - g2.d1 * g2.d1 - f.d1 * f.d1 - f.d1 * f.d1 * g1.d1 * g1.d1 + 2 * f.d1 * g1.d1 * g2.d1;
      const double planar = -f.d2 * (g2.d2 - f.d1 * g1.d2) / (den * den);
      const double general = translation_gauss_closed(nf.f1, nf.f2, nf.g1, nf.g2, Metric::lorentzian(), s, t);
      st.worst_rel = std::max(st.worst_rel, rel_err(planar, gauss_curvature(ff)));
      st.worst_rel = std::max(st.worst_rel, rel_err(general, gauss_curvature(ff)));
    }
  }
}

Outcome lorentz_consistency() {
  std::mt19937_64 rng(8);
  LorentzStats st;
  const Rect unit{{-1, 1}, {-1, 1}};
  auto quad = [&](double c0, double c1, double c2) {
    const double c[3] = {c0, c1, c2};
    return ex::polynomial(c);
  };
  for (int k = 0; k < 5; ++k) {
    // spacelike: small slopes everywhere
    const TranslationNormalForm sp{{ex::c(0), unit.s},
                                   {quad(0, uniform(rng, -0.3, 0.3), uniform(rng, -0.15, 0.15)), unit.s},
                                   {quad(0, uniform(rng, -0.3, 0.3), uniform(rng, -0.15, 0.15)), unit.t},
                                   {quad(0, uniform(rng, -0.3, 0.3), uniform(rng, -0.15, 0.15)), unit.t}};
    lorentz_translation(sp, unit, Character::Spacelike, st);
    // timelike: alpha steeper than the light cone
    const TranslationNormalForm tl{{ex::c(0), unit.s},
                                   {quad(0, uniform(rng, 1.4, 2.0), uniform(rng, -0.1, 0.1)), unit.s},
                                   {quad(0, uniform(rng, -0.3, 0.3), uniform(rng, -0.15, 0.15)), unit.t},
                                   {quad(0, uniform(rng, -0.3, 0.3), uniform(rng, -0.15, 0.15)), unit.t}};
    lorentz_translation(tl, unit, Character::Timelike, st);
  }
  for (int k = 0; k < 5; ++k) {
    const Rect dom{{-0.5, 0.5}, {-0.5, 0.5}};
    const Expr f = ex::c(uniform(rng, 0.1, 0.4)) * ex::exp(ex::c(uniform(rng, -1, 1)) * ex::x());
    const Expr g = quad(1, uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3));
    lorentz_graph(Surface(HomotheticalGraph{{f, dom.s}, {g, dom.t}, GraphAxis::Z}, dom, CausalRequirement::Spacelike),
                  GraphAxis::Z, st);
  }
  for (int k = 0; k < 5; ++k) {
    const Rect dom{{0, 0.5}, {-0.5, 0.5}};
    const Expr f = ex::c(uniform(rng, 1, 2)) * ex::exp(ex::c(uniform(rng, 1.5, 2.5)) * ex::x());
    const Expr g = quad(1, 0, uniform(rng, -0.3, 0.3));
    lorentz_graph(Surface(HomotheticalGraph{{f, dom.s}, {g, dom.t}, GraphAxis::X}, dom, CausalRequirement::Timelike),
                  GraphAxis::X, st);
  }
  // constraint enforcement where it fails on part of the grid
  const Rect wide{{-1, 1}, {-1, 1}};
  lorentz_graph(Surface(HomotheticalGraph{{ex::c(0.9) * ex::exp(ex::x()), wide.s}, {quad(1, 0.2, 0), wide.t},
                                          GraphAxis::Z},
                        wide, CausalRequirement::Spacelike),
                GraphAxis::Z, st);
  return {st.worst_rel < 1e-9 && st.causal_mismatches == 0 && st.character_mismatches == 0,
          "max rel err " + fmt(st.worst_rel) + " over " + std::to_string(st.nodes) + " nodes, " +
              std::to_string(st.causal_mismatches) + " causal mismatches"};
}

Outcome nonexistence() {
  const ProbeProblem unit{ProbeKind::HomotheticalNonzeroK, 1.0};
  const ProbeResult a = nonexistence_probe(unit, 42, 20, 1);
  const ProbeResult b = nonexistence_probe(unit, 42, 20, 4);
  const ProbeResult flat = nonexistence_probe({ProbeKind::HomotheticalNonzeroK, 0.0}, 42, 20, 4);
  const bool pass = a == b && a.best_residual > 0.0 && a.best_residual >= kHomotheticalUnitKFloor &&
                    flat.best_residual < 1e-6;
  return {pass, "K0=1 residual " + fmt(a.best_residual) + " (floor " + fmt(kHomotheticalUnitKFloor) +
                    "), K0=0 residual " + fmt(flat.best_residual) + (a == b ? ", reproducible" : ", NOT reproducible")};
}

Outcome determinism() {
  write("det_spec.json", R"js({"kind":"family","family":"helicoid","params":{"b":0.5,"c":2,"d":0.3}})js");
  Outcome o;
  auto same = [&](const std::string& what, const std::string& f1, const std::string& f2) {
    const std::string a = slurp(f1), b = slurp(f2);
    if (a.empty() || a != b) {
      o.pass = false;
      o.detail += what + " differs; ";
    }
  };
  auto twice = [&](const std::string& what, const std::string& args, std::vector<std::string> outputs,
                   unsigned n) {
    for (const auto& f : outputs) std::remove(f.c_str());
    run(cli() + " " + args + " --threads 1");
    for (const auto& f : outputs) std::rename(f.c_str(), (f + ".1").c_str());
    run(cli() + " " + args + " --threads " + std::to_string(n));
    for (const auto& f : outputs) same(what + " " + f, f + ".1", f);
  };
  for (unsigned n : {4u, 8u}) {
    twice("verify", "verify det_spec.json --quantity H --expected 0 --grid 33x29 --json v.json --csv v.csv",
          {"v.json", "v.csv"}, n);
    twice("mesh", "mesh det_spec.json --grid 33x29 -o m.obj", {"m.obj"}, n);
    twice("probe", "probe --K0 1 --seed 7 --budget 6 --json p.json", {"p.json"}, n);
  }
  if (o.pass) o.detail = "verify JSON/CSV, mesh OBJ and probe JSON byte-identical at 1, 4 and 8 threads";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {1, "scherk-minimality", scherk_minimality},
      {2, "helicoid-minimality", helicoid_minimality},
      {3, "flat-homothetical-families", flat_homothetical},
      {4, "translation-m-zero", structural_m_zero},
      {5, "flat-translation-classification", flat_classification},
      {6, "oracle-agreement", oracle_agreement},
      {7, "ode-crosschecks", ode_crosschecks},
      {8, "lorentzian-consistency", lorentz_consistency},
      {9, "nonexistence-probe", nonexistence},
      {10, "determinism", determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2d %-32s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
