#include "transurf/geometry.hpp"

#include <cmath>
#include <string>

#include "transurf/errors.hpp"

namespace transurf {

const char* to_string(Character c) {
  switch (c) {
    case Character::Spacelike:
      return "spacelike";
    case Character::Timelike:
      return "timelike";
    case Character::Degenerate:
      return "degenerate";
  }
  return "?";
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Curve3 make_curve(Expr x, Expr y, Expr z, Interval domain) {
  return {{std::move(x), domain}, {std::move(y), domain}, {std::move(z), domain}};
}

std::optional<TranslationNormalForm> normal_form(const Translation& tr) {
  if (tr.alpha.x.expr.op() != ExprOp::Var || tr.beta.y.expr.op() != ExprOp::Var) {
    return std::nullopt;
  }
  return TranslationNormalForm{tr.alpha.y, tr.alpha.z, tr.beta.x, tr.beta.z};
}

Translation make_translation(const TranslationNormalForm& nf) {
  return {{{ex::s(), nf.f1.domain}, nf.f1, nf.f2}, {nf.g1, {ex::s(), nf.g1.domain}, nf.g2}};
}

Surface::Surface(Shape shape, Rect domain, CausalRequirement causal)
    : shape_(std::move(shape)), domain_(domain), causal_(causal) {
  if (!(domain_.s.lo < domain_.s.hi) || !(domain_.t.lo < domain_.t.hi)) {
    throw SpecError("surface domain must be a non-empty rectangle");
  }
  if (const auto* cyl = std::get_if<Cylindrical>(&shape_)) {
    const Vec3& d = cyl->direction;
    if (d[0] * d[0] + d[1] * d[1] + d[2] * d[2] == 0.0) {
      throw SpecError("cylinder direction must be nonzero");
    }
  }
}

namespace {

struct EmbedJets {
  double s, t;

  std::array<BiJet2, 3> operator()(const Translation& tr) const {
    const auto a = tr.alpha.jets(s);
    const auto b = tr.beta.jets(t);
    return {bijet_combine(a[0], b[0], CombineOp::Add), bijet_combine(a[1], b[1], CombineOp::Add),
            bijet_combine(a[2], b[2], CombineOp::Add)};
  }

  std::array<BiJet2, 3> operator()(const HomotheticalGraph& hg) const {
    const BiJet2 h = bijet_combine(hg.f.jet(s), hg.g.jet(t), CombineOp::Mul);
    if (hg.axis == GraphAxis::Z) {
      return {BiJet2::variable_s(s), BiJet2::variable_t(t), h};
    }
    return {h, BiJet2::variable_s(s), BiJet2::variable_t(t)};
  }

  std::array<BiJet2, 3> operator()(const GenericParametric& gp) const {
    const std::array<BiJet2, 2> vars{BiJet2::variable_s(s), BiJet2::variable_t(t)};
    return {gp.X[0].eval<BiJet2>(vars), gp.X[1].eval<BiJet2>(vars), gp.X[2].eval<BiJet2>(vars)};
  }

  std::array<BiJet2, 3> operator()(const Cylindrical& cyl) const {
    const auto b = cyl.base.jets(s);
    std::array<BiJet2, 3> out;
    for (int i = 0; i < 3; ++i) {
      const double d = cyl.direction[i];
      out[i] = lift_s(b[i]) + BiJet2{t * d, 0.0, d, 0.0, 0.0, 0.0};
    }
    return out;
  }
};

void check_inside(const Rect& r, double s, double t) {
  if (!r.contains(s, t)) {
    throw DomainError("parameter point (" + std::to_string(s) + ", " + std::to_string(t) +
                      ") outside surface domain");
  }
}

bool degenerate(double E, double F, double G) {
  const double scale = std::max(1.0, E * E + F * F + G * G);
  return std::abs(E * G - F * F) <= kDegeneracyTol * scale;
}

}  // namespace

std::array<BiJet2, 3> Surface::embed_jets(double s, double t) const {
  check_inside(domain_, s, t);
  return std::visit(EmbedJets{s, t}, shape_);
}

Vec3 Surface::embed(double s, double t) const {
  check_inside(domain_, s, t);
  return std::visit(
      [&](const auto& sh) -> Vec3 {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Translation>) {
          return sh.alpha.point(s) + sh.beta.point(t);
        } else if constexpr (std::is_same_v<T, HomotheticalGraph>) {
          const double h = sh.f.value(s) * sh.g.value(t);
          return sh.axis == GraphAxis::Z ? Vec3{s, t, h} : Vec3{h, s, t};
        } else if constexpr (std::is_same_v<T, GenericParametric>) {
          const std::array<double, 2> vars{s, t};
          return {sh.X[0].template eval<double>(vars), sh.X[1].template eval<double>(vars),
                  sh.X[2].template eval<double>(vars)};
        } else {
          return sh.base.point(s) + t * sh.direction;
        }
      },
      shape_);
}

bool is_lightlike(const Vec3& v, const Metric& m) {
  const double e2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return std::abs(m.dot(v, v)) <= kDegeneracyTol * std::max(1.0, e2);
}

FundamentalForms fundamental_forms(const Surface& S, const Metric& M, double s, double t) {
  const auto X = S.embed_jets(s, t);
  const Vec3 Xs{X[0].ds, X[1].ds, X[2].ds};
  const Vec3 Xt{X[0].dt, X[1].dt, X[2].dt};
  const Vec3 Xss{X[0].dss, X[1].dss, X[2].dss};
  const Vec3 Xst{X[0].dst, X[1].dst, X[2].dst};
  const Vec3 Xtt{X[0].dtt, X[1].dtt, X[2].dtt};

  FundamentalForms ff;
  ff.E = M.dot(Xs, Xs);
  ff.F = M.dot(Xs, Xt);
  ff.G = M.dot(Xt, Xt);
  if (degenerate(ff.E, ff.F, ff.G)) {
    throw DegenerateError("degenerate first fundamental form at (" + std::to_string(s) + ", " +
                          std::to_string(t) + ")");
  }
  const double W = ff.det();
  if (M.signature == Signature::Euclidean) {
    ff.character = Character::Spacelike;
  } else {
    ff.character = W > 0.0 ? Character::Spacelike : Character::Timelike;
    const CausalRequirement req = S.causal();
    if ((req == CausalRequirement::Spacelike && ff.character != Character::Spacelike) ||
        (req == CausalRequirement::Timelike && ff.character != Character::Timelike)) {
      throw CausalityError(std::string("surface is ") + to_string(ff.character) + " at (" +
                           std::to_string(s) + ", " + std::to_string(t) +
                           ") but its causal constraint requires otherwise");
    }
  }

  const Vec3 c = M.cross(Xs, Xt);
  const double cc = M.dot(c, c);
  const double norm = std::sqrt(std::abs(cc));
  ff.N = (1.0 / norm) * c;
  ff.eps = cc > 0.0 ? 1 : -1;
  ff.l = M.dot(Xss, ff.N);
  ff.m = M.dot(Xst, ff.N);
  ff.n = M.dot(Xtt, ff.N);
  return ff;
}

double gauss_curvature(const FundamentalForms& ff) {
  return ff.eps * (ff.l * ff.n - ff.m * ff.m) / ff.det();
}

double gauss_curvature(const Surface& S, const Metric& M, double s, double t) {
  return gauss_curvature(fundamental_forms(S, M, s, t));
}

double mean_curvature(const FundamentalForms& ff) {
  return ff.eps * 0.5 * (ff.l * ff.G - 2.0 * ff.m * ff.F + ff.n * ff.E) / ff.det();
}

double mean_curvature(const Surface& S, const Metric& M, double s, double t) {
  return mean_curvature(fundamental_forms(S, M, s, t));
}

// ---- closed forms ----------------------------------------------------------

double translation_gauss_closed(const TranslationJets& j, Signature sig) {
  const double f1p = j.f1.d1, f2p = j.f2.d1, g1p = j.g1.d1, g2p = j.g2.d1;
  const double f1pp = j.f1.d2, f2pp = j.f2.d2, g1pp = j.g1.d2, g2pp = j.g2.d2;
  const double A = f2pp - f1pp * g2p + g1p * (f1pp * f2p - f1p * f2pp);
  const double B = g2pp - f2p * g1pp + f1p * (g1pp * g2p - g1p * g2pp);
  const double sz = sig == Signature::Euclidean ? 1.0 : -1.0;
  const double E = 1.0 + f1p * f1p + sz * f2p * f2p;
  const double G = 1.0 + g1p * g1p + sz * g2p * g2p;
  const double F = f1p + g1p + sz * f2p * g2p;
  if (degenerate(E, F, G)) throw DegenerateError("translation surface: vanishing denominator");
  const double den = E * G - F * F;
  return sz * A * B / (den * den);
}

double translation_gauss_closed(const SmoothFn1& f1, const SmoothFn1& f2, const SmoothFn1& g1,
                                const SmoothFn1& g2, const Metric& M, double s, double t) {
  return translation_gauss_closed({f1.jet(s), f2.jet(s), g1.jet(t), g2.jet(t)}, M.signature);
}

namespace {

// Graph h(p, q) = f(p) g(q) and its partials.
struct GraphPartials {
  double h1, h2, h11, h12, h22;
};

GraphPartials graph_partials(const UniJet3& f, const UniJet3& g) {
  return {f.d1 * g.v, f.v * g.d1, f.d2 * g.v, f.d1 * g.d1, f.v * g.d2};
}

// E, F, G of the graph over the parameter plane; returns EG - F^2 after the
// degeneracy and causality checks.
double graph_first_form_det(const GraphPartials& p, Signature sig, GraphAxis axis) {
  double E, F, G;
  if (sig == Signature::Euclidean) {
    E = 1.0 + p.h1 * p.h1;
    F = p.h1 * p.h2;
    G = 1.0 + p.h2 * p.h2;
  } else if (axis == GraphAxis::Z) {
    E = 1.0 - p.h1 * p.h1;
    F = -p.h1 * p.h2;
    G = 1.0 - p.h2 * p.h2;
  } else {
    E = 1.0 + p.h1 * p.h1;
    F = p.h1 * p.h2;
    G = p.h2 * p.h2 - 1.0;
  }
  if (degenerate(E, F, G)) throw DegenerateError("homothetical graph: degenerate first form");
  const double W = E * G - F * F;
  if (sig == Signature::Lorentzian) {
    if (axis == GraphAxis::Z && !(W > 0.0)) {
      throw CausalityError("z=f(x)g(y) requires 1 - f'^2 g^2 - f^2 g'^2 > 0");
    }
    if (axis == GraphAxis::X && !(W < 0.0)) {
      throw CausalityError("x=f(y)g(z) requires 1 + f'^2 g^2 - f^2 g'^2 > 0");
    }
  }
  return W;
}

}  // namespace

double homothetical_gauss_closed(const UniJet3& f, const UniJet3& g, Signature sig, GraphAxis axis) {
  const GraphPartials p = graph_partials(f, g);
  const double W = graph_first_form_det(p, sig, axis);
  const double N = f.v * g.v * f.d2 * g.d2 - f.d1 * f.d1 * g.d1 * g.d1;
  // |EG - F^2| is the printed denominator 1 +- f'^2 g^2 +- f^2 g'^2.
  const double D = std::abs(W);
  return (sig == Signature::Euclidean ? 1.0 : -1.0) * N / (D * D);
}

double homothetical_gauss_closed(const SmoothFn1& f, const SmoothFn1& g, const Metric& M,
                                 GraphAxis axis, double x, double y) {
  return homothetical_gauss_closed(f.jet(x), g.jet(y), M.signature, axis);
}

double homothetical_mean_closed(const UniJet3& f, const UniJet3& g, Signature sig, GraphAxis axis) {
  const GraphPartials p = graph_partials(f, g);
  const double W = graph_first_form_det(p, sig, axis);
  const double D = std::abs(W);
  const double D32 = D * std::sqrt(D);
  const double a = p.h1 * p.h1, b = p.h2 * p.h2, cross = 2.0 * p.h1 * p.h2 * p.h12;
  if (sig == Signature::Euclidean) {
    return (p.h11 * (1.0 + b) - cross + p.h22 * (1.0 + a)) / (2.0 * D32);
  }
  if (axis == GraphAxis::Z) {
    return -(p.h11 * (1.0 - b) + cross + p.h22 * (1.0 - a)) / (2.0 * D32);
  }
  return -(p.h11 * (b - 1.0) - cross + p.h22 * (1.0 + a)) / (2.0 * D32);
}

double homothetical_mean_closed(const SmoothFn1& f, const SmoothFn1& g, const Metric& M,
                                GraphAxis axis, double x, double y) {
  return homothetical_mean_closed(f.jet(x), g.jet(y), M.signature, axis);
}

double homothetical_minimal_residual(const UniJet3& f, const UniJet3& g) {
  const double fp2 = f.d1 * f.d1, gp2 = g.d1 * g.d1;
  return f.d2 * g.v * (1.0 + f.v * f.v * gp2) - 2.0 * f.v * fp2 * g.v * gp2 +
         f.v * g.d2 * (1.0 + fp2 * g.v * g.v);
}

double homothetical_minimal_residual(const SmoothFn1& f, const SmoothFn1& g, double x, double y) {
  return homothetical_minimal_residual(f.jet(x), g.jet(y));
}

double homothetical_flat_residual(const UniJet3& f, const UniJet3& g) {
  return f.v * f.d2 * g.v * g.d2 - f.d1 * f.d1 * g.d1 * g.d1;
}

double homothetical_flat_residual(const SmoothFn1& f, const SmoothFn1& g, double x, double y) {
  return homothetical_flat_residual(f.jet(x), g.jet(y));
}

double curve_planarity_residual(const Curve3& c, double t) {
  const auto j = c.jets(t);
  return det3({j[0].d1, j[1].d1, j[2].d1}, {j[0].d2, j[1].d2, j[2].d2},
              {j[0].d3, j[1].d3, j[2].d3});
}

}  // namespace transurf
