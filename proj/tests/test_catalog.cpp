#include <cmath>

#include "doctest.h"
#include "transurf/catalog.hpp"
#include "transurf/errors.hpp"
#include "transurf/verify.hpp"

using namespace transurf;

namespace {

ConstancyReport constancy(const FamilySpec& spec, Quantity q, std::optional<double> expected,
                          double tol) {
  const Surface S = make_family(spec);
  const SampleSet set = sample_curvature(S, family_metric(spec.name), grid_over(S.domain(), 11, 11));
  return check_constancy(set, q, expected, tol);
}

const HomotheticalGraph& factors(const Surface& S) { return std::get<HomotheticalGraph>(S.shape()); }

}  // namespace

TEST_CASE("every family passes its claimed constancy with defaults") {
  struct Claim {
    Family family;
    Quantity q;
    std::optional<double> expected;
    double tol;
  };
  const Claim claims[] = {
      {Family::Plane, Quantity::K, 0.0, kTolK},
      {Family::Plane, Quantity::H, 0.0, kTolH},
      {Family::CircularCylinder, Quantity::K, 0.0, kTolK},
      {Family::CircularCylinder, Quantity::H, std::nullopt, kTolH},
      {Family::CylindricalOverCurve, Quantity::K, 0.0, kTolK},
      {Family::Scherk, Quantity::H, 0.0, kTolH},
      {Family::Helicoid, Quantity::H, 0.0, kTolH},
      {Family::ExpHomothetical, Quantity::K, 0.0, kTolK},
      {Family::PowerHomothetical, Quantity::K, 0.0, kTolK},
      {Family::LorentzSpacelikeExp, Quantity::K, 0.0, kTolK},
      {Family::LorentzTimelikeExp, Quantity::K, 0.0, kTolK},
      {Family::LorentzPowerHomothetical, Quantity::K, 0.0, kTolK},
  };
  for (const Claim& c : claims) {
    CAPTURE(family_id(c.family));
    const ConstancyReport r = constancy({c.family, {}, std::nullopt}, c.q, c.expected, c.tol);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.skipped_degenerate == 0);
  }
  const ConstancyReport cyl =
      constancy({Family::CircularCylinder, {{"r", 2.0}}, std::nullopt}, Quantity::H, std::nullopt, kTolH);
  CHECK(std::abs(cyl.mean) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("catalog examples") {
  const Surface scherk = make_family({Family::Scherk, {{"a", 1.0}}, Rect{{-1.4, 1.4}, {-1.4, 1.4}}});
  const SampleSet set = sample_curvature(scherk, Metric::euclidean(), grid_over(scherk.domain(), 21, 21));
  CHECK(set.samples.size() == 441);
  for (const auto& c : set.samples) CHECK(std::abs(c.H) < 1e-10);

  CHECK(constancy({Family::Helicoid, {{"b", 0.5}, {"c", 2.0}, {"d", 0.3}}, std::nullopt}, Quantity::H, 0.0,
                  1e-10)
            .verdict == Verdict::Pass);
  CHECK(constancy({Family::PowerHomothetical, {{"b", 1}, {"c", 1}, {"d", 2}, {"e", 2}, {"m", 3}}, std::nullopt},
                  Quantity::K, 0.0, 1e-9)
            .verdict == Verdict::Pass);
}

TEST_CASE("family ids round-trip") {
  for (const FamilySpec& f : list_families()) {
    CHECK(family_from_id(family_id(f.name)) == f.name);
    CHECK(family_params(f) == f.params);
  }
  CHECK_FALSE(family_from_id("sphere").has_value());
  CHECK(list_families().size() == 10);
}

TEST_CASE("power family symmetry m -> 1 - m") {
  const double b = 0.7, c = -1.3, d = 2.0, e = 1.5, m = 2.5;
  const Surface A = make_family({Family::PowerHomothetical, {{"b", b}, {"c", c}, {"d", d}, {"e", e}, {"m", m}},
                                 Rect{{-0.5, 0.5}, {-0.4, 0.4}}});
  const Surface B =
      make_family({Family::PowerHomothetical, {{"b", -c}, {"c", -b}, {"d", e}, {"e", d}, {"m", 1 - m}},
                   Rect{{-0.4, 0.4}, {-0.5, 0.5}}});
  for (auto [x, y] : {std::pair{0.1, -0.2}, {-0.45, 0.3}, {0.5, 0.4}}) {
    const Vec3 a = A.embed(x, y), bb = B.embed(y, x);
    CHECK(bb[2] == doctest::Approx(a[2]).epsilon(1e-13));
  }
}

TEST_CASE("branch constants map onto the theorem form") {
  const double a = 3.0, b = 0.4, c = 0.6, p = 1.2, q = 0.9;
  const FamilySpec spec = power_family_from_branch(a, b, c, p, q);
  CHECK(spec.params.at("m") == doctest::Approx(-0.5));
  const Surface S = make_family({spec.name, spec.params, Rect{{-0.5, 0.5}, {-0.5, 0.5}}});
  const HomotheticalGraph& h = factors(S);
  for (double u : {-0.5, -0.1, 0.3, 0.5}) {
    const UniJet3 f = h.f.jet(u), g = h.g.jet(u);
    CHECK(f.d1 == doctest::Approx(b * std::pow(f.v, a)).epsilon(1e-12));
    CHECK(g.d1 == doctest::Approx(c * std::pow(g.v, 1.0 / a)).epsilon(1e-12));
  }
  CHECK(h.f.value(0.0) == doctest::Approx(std::pow(p, 1.0 / (1.0 - a))));
  CHECK(h.g.value(0.0) == doctest::Approx(std::pow(q, a / (a - 1.0))));
  CHECK_THROWS_AS(power_family_from_branch(1.0, b, c, p, q), SpecError);
}

TEST_CASE("invalid family specs are rejected") {
  CHECK_THROWS_AS(make_family({Family::Scherk, {{"k", 1.0}}, std::nullopt}), SpecError);
  CHECK_THROWS_AS(make_family({Family::Scherk, {{"a", 1.0}}, Rect{{-1.6, 1.6}, {-1, 1}}}), SpecError);
  CHECK_THROWS_AS(make_family({Family::PowerHomothetical, {{"m", 1.0}}, std::nullopt}), SpecError);
  CHECK_THROWS_AS(make_family({Family::PowerHomothetical, {{"d", 0.5}}, Rect{{-3, 3}, {-1, 1}}}), SpecError);
  CHECK_THROWS_AS(make_family({Family::Helicoid, {{"c", 0.0}}, std::nullopt}), SpecError);
  CHECK_THROWS_AS(make_family({Family::CircularCylinder, {{"r", -1.0}}, std::nullopt}), SpecError);
  CHECK_THROWS_AS(make_family({Family::Plane, {{"p", NAN}}, std::nullopt}), SpecError);
}

TEST_CASE("default domains keep power bases away from zero") {
  const FamilySpec spec{Family::PowerHomothetical, {{"b", 4.0}, {"d", 0.5}, {"m", 2.0}}, std::nullopt};
  const Rect dom = family_default_domain(spec);
  CHECK(2.0 * dom.s.lo + 0.5 >= kSingularityMargin - 1e-12);
  CHECK(dom.s.hi == 1.0);
  CHECK_NOTHROW(make_family(spec));
}
