#pragma once

#include <array>
#include <optional>
#include <variant>

#include "transurf/expr.hpp"
#include "transurf/jets.hpp"

namespace transurf {

using Vec3 = std::array<double, 3>;

enum class Signature { Euclidean, Lorentzian };

/// Ambient metric: Euclidean, or Lorentzian diag(+1, +1, -1) on (x, y, z).
struct Metric {
  Signature signature = Signature::Euclidean;

  static constexpr Metric euclidean() { return {Signature::Euclidean}; }
  static constexpr Metric lorentzian() { return {Signature::Lorentzian}; }

  double dot(const Vec3& u, const Vec3& v) const {
    const double zz = u[2] * v[2];
    return u[0] * v[0] + u[1] * v[1] + (signature == Signature::Euclidean ? zz : -zz);
  }

  /// Metric-adjoint cross product: dot(cross(u, v), w) == det(u, v, w).
  Vec3 cross(const Vec3& u, const Vec3& v) const {
    Vec3 c{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    if (signature == Signature::Lorentzian) c[2] = -c[2];
    return c;
  }

  friend bool operator==(const Metric&, const Metric&) = default;
};

enum class Character { Spacelike, Timelike, Degenerate };

const char* to_string(Character c);

/// Space curve; the three components share one parameter interval.
struct Curve3 {
  SmoothFn1 x, y, z;

  Interval domain() const { return x.domain; }
  std::array<UniJet3, 3> jets(double u) const { return {x.jet(u), y.jet(u), z.jet(u)}; }
  Vec3 point(double u) const { return {x.value(u), y.value(u), z.value(u)}; }
};

/// Curve3 whose components are given as expressions over a shared interval.
Curve3 make_curve(Expr x, Expr y, Expr z, Interval domain);

/// X(s,t) = alpha(s) + beta(t).
struct Translation {
  Curve3 alpha;
  Curve3 beta;
};

/// Generator functions of a translation surface in graph normal form
/// alpha = (s, f1, f2), beta = (g1, t, g2).
struct TranslationNormalForm {
  SmoothFn1 f1, f2, g1, g2;
};

/// Returns the normal-form generators when alpha.x and beta.y are the bare
/// parameter, nullopt otherwise.
std::optional<TranslationNormalForm> normal_form(const Translation& tr);

Translation make_translation(const TranslationNormalForm& nf);

enum class GraphAxis {
  Z,  // z = f(x) g(y), parameters (s, t) = (x, y)
  X,  // x = f(y) g(z), parameters (s, t) = (y, z)
};

struct HomotheticalGraph {
  SmoothFn1 f;
  SmoothFn1 g;
  GraphAxis axis = GraphAxis::Z;
};

struct GenericParametric {
  std::array<Expr, 3> X;  // bivariate in (s, t)
};

/// X(s,t) = base(s) + t * direction.
struct Cylindrical {
  Curve3 base;
  Vec3 direction;
};

/// Causal character a Lorentzian surface is required to keep at every node.
enum class CausalRequirement { Any, Spacelike, Timelike };

class Surface {
 public:
  using Shape = std::variant<Translation, HomotheticalGraph, GenericParametric, Cylindrical>;

  Surface(Shape shape, Rect domain, CausalRequirement causal = CausalRequirement::Any);

  const Shape& shape() const { return shape_; }
  const Rect& domain() const { return domain_; }
  CausalRequirement causal() const { return causal_; }

  /// Embedding components with partials to second order. DomainError outside
  /// the domain rectangle.
  std::array<BiJet2, 3> embed_jets(double s, double t) const;
  /// Embedding value only.
  Vec3 embed(double s, double t) const;

 private:
  Shape shape_;
  Rect domain_;
  CausalRequirement causal_;
};

bool is_lightlike(const Vec3& v, const Metric& m);

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double l = 0, m = 0, n = 0;
  Vec3 N{};
  Character character = Character::Spacelike;
  int eps = 1;

  double det() const { return E * G - F * F; }
};

/// Degeneracy threshold on |EG - F^2|, relative to the form magnitudes.
constexpr double kDegeneracyTol = 1e-12;

/// First and second fundamental forms at (s, t). N is proportional to
/// cross(X_s, X_t). Throws DegenerateError on a degenerate first form and
/// CausalityError when a Lorentzian causal requirement is violated.
FundamentalForms fundamental_forms(const Surface& S, const Metric& M, double s, double t);

/// K = eps (ln - m^2) / (EG - F^2).
double gauss_curvature(const FundamentalForms& ff);
double gauss_curvature(const Surface& S, const Metric& M, double s, double t);

/// H = eps (lG - 2mF + nE) / (2 (EG - F^2)).
double mean_curvature(const FundamentalForms& ff);
double mean_curvature(const Surface& S, const Metric& M, double s, double t);

// ---- closed forms ----------------------------------------------------------

/// Jets of f1, f2 at s and of g1, g2 at t.
struct TranslationJets {
  UniJet3 f1, f2, g1, g2;
};

/// Gauss curvature of alpha=(s,f1,f2), beta=(g1,t,g2) from the generator
/// derivatives. The Lorentzian form carries a global minus sign.
double translation_gauss_closed(const TranslationJets& j, Signature sig);
double translation_gauss_closed(const SmoothFn1& f1, const SmoothFn1& f2, const SmoothFn1& g1,
                                const SmoothFn1& g2, const Metric& M, double s, double t);

/// Gauss curvature of a homothetical graph from the factor jets (f at the
/// first parameter, g at the second). Lorentzian Z graphs must be spacelike
/// (1 - f'^2 g^2 - f^2 g'^2 > 0) and X graphs timelike
/// (1 + f'^2 g^2 - f^2 g'^2 > 0); otherwise CausalityError.
double homothetical_gauss_closed(const UniJet3& f, const UniJet3& g, Signature sig, GraphAxis axis);
double homothetical_gauss_closed(const SmoothFn1& f, const SmoothFn1& g, const Metric& M,
                                 GraphAxis axis, double x, double y);

/// Mean curvature of a homothetical graph, oriented like the pipeline normal.
double homothetical_mean_closed(const UniJet3& f, const UniJet3& g, Signature sig, GraphAxis axis);
double homothetical_mean_closed(const SmoothFn1& f, const SmoothFn1& g, const Metric& M,
                                GraphAxis axis, double x, double y);

/// f''g(1+f^2g'^2) - 2ff'^2gg'^2 + fg''(1+f'^2g^2); zero iff z=f(x)g(y) is
/// minimal at (x, y).
double homothetical_minimal_residual(const UniJet3& f, const UniJet3& g);
double homothetical_minimal_residual(const SmoothFn1& f, const SmoothFn1& g, double x, double y);

/// ff''gg'' - f'^2g'^2; zero iff K = 0 at (x, y).
double homothetical_flat_residual(const UniJet3& f, const UniJet3& g);
double homothetical_flat_residual(const SmoothFn1& f, const SmoothFn1& g, double x, double y);

/// det(c'(t), c''(t), c'''(t)) with the Euclidean determinant.
double curve_planarity_residual(const Curve3& c, double t);

// ---- small vector helpers --------------------------------------------------

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }
double det3(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace transurf
