#include "transurf/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "transurf/errors.hpp"

namespace transurf {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view id;
  std::vector<std::pair<std::string, double>> defaults;
};

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> table{
      {Family::Plane, "plane", {{"p", 0.0}, {"q", 0.0}}},
      {Family::CircularCylinder, "circular_cylinder", {{"r", 1.0}}},
      {Family::CylindricalOverCurve, "cylindrical_over_curve", {{"x0", 1.0}}},
      {Family::Scherk, "scherk", {{"a", 1.0}}},
      {Family::Helicoid, "helicoid", {{"b", 0.0}, {"c", 1.0}, {"d", 0.0}}},
      {Family::ExpHomothetical, "exp_homothetical", {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}},
      {Family::PowerHomothetical,
       "power_homothetical",
       {{"b", 1.0}, {"c", 1.0}, {"d", 2.0}, {"e", 2.0}, {"m", 3.0}}},
      {Family::LorentzSpacelikeExp, "lorentz_spacelike_exp", {{"a", 0.1}, {"b", 0.5}, {"c", 0.5}}},
      {Family::LorentzTimelikeExp, "lorentz_timelike_exp", {{"a", 1.0}, {"b", 1.0}, {"c", 0.5}}},
      {Family::LorentzPowerHomothetical,
       "lorentz_power_homothetical",
       {{"b", 0.2}, {"c", 0.2}, {"d", 2.0}, {"e", 2.0}, {"m", 3.0}}},
  };
  return table;
}

const FamilyInfo& info(Family f) {
  for (const auto& fi : family_table()) {
    if (fi.family == f) return fi;
  }
  throw SpecError("unknown family");
}

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr Interval kUnit{-1.0, 1.0};

[[noreturn]] void violated(Family f, const std::string& what) {
  throw SpecError(std::string(family_id(f)) + ": " + what);
}

// Interval of u where the affine map k*u + c stays within [lo, hi].
Interval preimage(double k, double c, double lo, double hi) {
  double a = (lo - c) / k;
  double b = (hi - c) / k;
  if (a > b) std::swap(a, b);
  return {a, b};
}

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Parameter interval inside `window` where k*u + c >= margin.
Interval positive_base(Family f, const char* which, double k, double c, Interval window) {
  const Interval keep = intersect(preimage(k, c, kSingularityMargin, 1e300), window);
  if (!(keep.width() > kSingularityMargin)) {
    violated(f, std::string("no default domain keeps the ") + which +
                    " power base positive on [-1, 1]; pass an explicit domain");
  }
  return keep;
}

// Linear map k*u + c must stay > 0 over the closed interval.
void require_positive(Family f, const char* which, double k, double c, const Interval& I) {
  if (!(k * I.lo + c > 0.0) || !(k * I.hi + c > 0.0)) {
    violated(f, std::string("domain makes the ") + which + " power base non-positive");
  }
}

void require_pole_free(Family f, double k, double c, const Interval& I) {
  const double lim = (kHalfPi - kSingularityMargin) * (1.0 + 1e-12);
  if (std::abs(k * I.lo + c) > lim || std::abs(k * I.hi + c) > lim) {
    violated(f, "domain reaches within the singularity margin of a pole");
  }
}

struct PowerParams {
  double b, c, d, e, m;
};

PowerParams power_params(Family f, const std::map<std::string, double>& p) {
  PowerParams pp{p.at("b"), p.at("c"), p.at("d"), p.at("e"), p.at("m")};
  if (pp.b == 0.0 || pp.c == 0.0) violated(f, "requires b != 0 and c != 0");
  if (pp.m == 0.0 || pp.m == 1.0) violated(f, "requires m not in {0, 1}");
  return pp;
}

void require_positive_params(Family f, const std::map<std::string, double>& p,
                             std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (!(p.at(k) > 0.0)) violated(f, std::string("requires ") + k + " > 0");
  }
}

Rect default_domain(Family f, const std::map<std::string, double>& p) {
  switch (f) {
    case Family::Plane:
    case Family::CylindricalOverCurve:
    case Family::ExpHomothetical:
    case Family::LorentzSpacelikeExp:
    case Family::LorentzTimelikeExp:
      return {kUnit, kUnit};
    case Family::CircularCylinder:
      return {{-std::numbers::pi, std::numbers::pi}, kUnit};
    case Family::Scherk: {
      const double a = p.at("a");
      const double half = (kHalfPi - kSingularityMargin) / a;
      return {{-half, half}, {-half, half}};
    }
    case Family::Helicoid: {
      const double lim = kHalfPi - kSingularityMargin;
      return {kUnit, preimage(p.at("c"), p.at("d"), -lim, lim)};
    }
    case Family::PowerHomothetical:
    case Family::LorentzPowerHomothetical: {
      const PowerParams pp = power_params(f, p);
      return {positive_base(f, "x", pp.b / pp.m, pp.d, kUnit),
              positive_base(f, "y", pp.c / (pp.m - 1.0), pp.e, kUnit)};
    }
  }
  violated(f, "no default domain");
}

void validate(Family f, const std::map<std::string, double>& p) {
  switch (f) {
    case Family::CircularCylinder:
      require_positive_params(f, p, {"r"});
      break;
    case Family::Scherk:
      require_positive_params(f, p, {"a"});
      break;
    case Family::Helicoid:
      if (p.at("c") == 0.0) violated(f, "requires c != 0");
      break;
    case Family::ExpHomothetical:
    case Family::LorentzSpacelikeExp:
    case Family::LorentzTimelikeExp:
      require_positive_params(f, p, {"a", "b", "c"});
      break;
    case Family::PowerHomothetical:
    case Family::LorentzPowerHomothetical:
      power_params(f, p);
      break;
    default:
      break;
  }
}

void validate_domain(Family f, const std::map<std::string, double>& p, const Rect& dom) {
  if (!(dom.s.lo < dom.s.hi) || !(dom.t.lo < dom.t.hi)) violated(f, "empty domain");
  switch (f) {
    case Family::Scherk: {
      const double a = p.at("a");
      require_pole_free(f, a, 0.0, dom.s);
      require_pole_free(f, a, 0.0, dom.t);
      break;
    }
    case Family::Helicoid:
      require_pole_free(f, p.at("c"), p.at("d"), dom.t);
      break;
    case Family::PowerHomothetical:
    case Family::LorentzPowerHomothetical: {
      const PowerParams pp = power_params(f, p);
      require_positive(f, "x", pp.b / pp.m, pp.d, dom.s);
      require_positive(f, "y", pp.c / (pp.m - 1.0), pp.e, dom.t);
      break;
    }
    default:
      break;
  }
}

Surface power_surface(const PowerParams& pp, const Rect& dom, GraphAxis axis,
                      CausalRequirement causal) {
  using namespace ex;
  const Expr f = ex::pow(c(pp.b / pp.m) * x() + c(pp.d), pp.m);
  const Expr g = ex::pow(c(pp.c / (pp.m - 1.0)) * x() + c(pp.e), 1.0 - pp.m);
  return Surface(HomotheticalGraph{{f, dom.s}, {g, dom.t}, axis}, dom, causal);
}

Surface exp_surface(const std::map<std::string, double>& p, const Rect& dom, GraphAxis axis,
                    CausalRequirement causal) {
  using namespace ex;
  const Expr f = c(p.at("a")) * ex::exp(c(p.at("b")) * x());
  const Expr g = ex::exp(c(p.at("c")) * x());
  return Surface(HomotheticalGraph{{f, dom.s}, {g, dom.t}, axis}, dom, causal);
}

}  // namespace

std::string_view family_id(Family f) { return info(f).id; }

std::optional<Family> family_from_id(std::string_view id) {
  for (const auto& fi : family_table()) {
    if (fi.id == id) return fi.family;
  }
  return std::nullopt;
}

Metric family_metric(Family f) {
  switch (f) {
    case Family::LorentzSpacelikeExp:
    case Family::LorentzTimelikeExp:
    case Family::LorentzPowerHomothetical:
      return Metric::lorentzian();
    default:
      return Metric::euclidean();
  }
}

std::map<std::string, double> family_params(const FamilySpec& spec) {
  const FamilyInfo& fi = info(spec.name);
  std::map<std::string, double> out(fi.defaults.begin(), fi.defaults.end());
  for (const auto& [key, value] : spec.params) {
    if (!out.contains(key)) {
      violated(spec.name, "unknown parameter '" + key + "'");
    }
    if (!std::isfinite(value)) violated(spec.name, "parameter '" + key + "' is not finite");
    out[key] = value;
  }
  return out;
}

Rect family_default_domain(const FamilySpec& spec) {
  const auto p = family_params(spec);
  validate(spec.name, p);
  return default_domain(spec.name, p);
}

Surface make_family(const FamilySpec& spec) {
  using namespace ex;
  const Family f = spec.name;
  const auto p = family_params(spec);
  validate(f, p);
  const Rect dom = spec.domain ? *spec.domain : default_domain(f, p);
  validate_domain(f, p, dom);

  switch (f) {
    case Family::Plane: {
      const TranslationNormalForm nf{{c(0.0), dom.s},
                                     {c(p.at("p")) * x(), dom.s},
                                     {c(0.0), dom.t},
                                     {c(p.at("q")) * x(), dom.t}};
      return Surface(make_translation(nf), dom);
    }
    case Family::CircularCylinder: {
      const double r = p.at("r");
      Curve3 alpha = make_curve(c(0.0), c(r) * ex::cos(x()), c(r) * ex::sin(x()), dom.s);
      Curve3 beta = make_curve(x(), c(0.0), c(0.0), dom.t);
      return Surface(Translation{std::move(alpha), std::move(beta)}, dom);
    }
    case Family::CylindricalOverCurve: {
      // z = x0 cos(y): the constant-f case, rulings parallel to the x-axis.
      Curve3 base = make_curve(c(0.0), x(), c(p.at("x0")) * ex::cos(x()), dom.s);
      return Surface(Cylindrical{std::move(base), {1.0, 0.0, 0.0}}, dom);
    }
    case Family::Scherk: {
      const double a = p.at("a");
      const TranslationNormalForm nf{{c(0.0), dom.s},
                                     {c(-1.0 / a) * ex::log(ex::cos(c(a) * x())), dom.s},
                                     {c(0.0), dom.t},
                                     {c(1.0 / a) * ex::log(ex::cos(c(a) * x())), dom.t}};
      return Surface(make_translation(nf), dom);
    }
    case Family::Helicoid: {
      const Expr fx = x() + c(p.at("b"));
      const Expr gy = ex::tan(c(p.at("c")) * x() + c(p.at("d")));
      return Surface(HomotheticalGraph{{fx, dom.s}, {gy, dom.t}, GraphAxis::Z}, dom);
    }
    case Family::ExpHomothetical:
      return exp_surface(p, dom, GraphAxis::Z, CausalRequirement::Any);
    case Family::PowerHomothetical:
      return power_surface(power_params(f, p), dom, GraphAxis::Z, CausalRequirement::Any);
    case Family::LorentzSpacelikeExp:
      return exp_surface(p, dom, GraphAxis::Z, CausalRequirement::Spacelike);
    case Family::LorentzTimelikeExp:
      return exp_surface(p, dom, GraphAxis::X, CausalRequirement::Timelike);
    case Family::LorentzPowerHomothetical:
      return power_surface(power_params(f, p), dom, GraphAxis::Z, CausalRequirement::Spacelike);
  }
  violated(f, "unhandled family");
}

std::vector<FamilySpec> list_families() {
  std::vector<FamilySpec> out;
  for (const auto& fi : family_table()) {
    out.push_back({fi.family, {fi.defaults.begin(), fi.defaults.end()}, std::nullopt});
  }
  return out;
}

FamilySpec power_family_from_branch(double a, double b, double c, double p, double q) {
  if (a == 1.0 || a == 0.0) throw SpecError("power branch requires a not in {0, 1}");
  return {Family::PowerHomothetical,
          {{"b", b}, {"c", -c}, {"d", p}, {"e", q}, {"m", 1.0 / (1.0 - a)}},
          std::nullopt};
}

}  // namespace transurf
