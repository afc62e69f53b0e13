#pragma once

#include <cmath>

namespace transurf {

/// Value and first three derivatives of a one-variable function at a point.
struct UniJet3 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  static constexpr UniJet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  static constexpr UniJet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }

  friend bool operator==(const UniJet3&, const UniJet3&) = default;
};

/// Value and partials up to order two in (s, t). The single `dst` slot makes
/// mixed-partial symmetry structural.
struct BiJet2 {
  double v = 0.0;
  double ds = 0.0;
  double dt = 0.0;
  double dss = 0.0;
  double dst = 0.0;
  double dtt = 0.0;

  static constexpr BiJet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
  static constexpr BiJet2 variable_s(double s) { return {s, 1, 0, 0, 0, 0}; }
  static constexpr BiJet2 variable_t(double t) { return {t, 0, 1, 0, 0, 0}; }

  friend bool operator==(const BiJet2&, const BiJet2&) = default;
};

/// Derivatives phi(u), phi'(u), phi''(u), phi'''(u) of an outer scalar
/// function, used to push a jet through phi by the chain rule.
struct OuterDerivs {
  double f0, f1, f2, f3;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const UniJet3& a) {
  return std::isfinite(a.v) && std::isfinite(a.d1) && std::isfinite(a.d2) &&
         std::isfinite(a.d3);
}
inline bool is_finite(const BiJet2& a) {
  return std::isfinite(a.v) && std::isfinite(a.ds) && std::isfinite(a.dt) &&
         std::isfinite(a.dss) && std::isfinite(a.dst) && std::isfinite(a.dtt);
}

inline double value_of(double a) { return a; }
inline double value_of(const UniJet3& a) { return a.v; }
inline double value_of(const BiJet2& a) { return a.v; }

// ---- composition (Faa di Bruno, truncated) ---------------------------------

inline double compose(double, const OuterDerivs& p) { return p.f0; }

inline UniJet3 compose(const UniJet3& u, const OuterDerivs& p) {
  return {p.f0, p.f1 * u.d1, p.f2 * u.d1 * u.d1 + p.f1 * u.d2,
          p.f3 * u.d1 * u.d1 * u.d1 + 3.0 * p.f2 * u.d1 * u.d2 + p.f1 * u.d3};
}

inline BiJet2 compose(const BiJet2& u, const OuterDerivs& p) {
  return {p.f0,
          p.f1 * u.ds,
          p.f1 * u.dt,
          p.f2 * u.ds * u.ds + p.f1 * u.dss,
          p.f2 * u.ds * u.dt + p.f1 * u.dst,
          p.f2 * u.dt * u.dt + p.f1 * u.dtt};
}

// ---- UniJet3 arithmetic ----------------------------------------------------

inline UniJet3 operator+(const UniJet3& a, const UniJet3& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline UniJet3 operator-(const UniJet3& a, const UniJet3& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline UniJet3 operator-(const UniJet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }
inline UniJet3 operator*(const UniJet3& a, const UniJet3& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}
inline UniJet3 operator*(double c, const UniJet3& a) {
  return {c * a.v, c * a.d1, c * a.d2, c * a.d3};
}
inline UniJet3 operator*(const UniJet3& a, double c) { return c * a; }
inline UniJet3 operator+(const UniJet3& a, double c) { return {a.v + c, a.d1, a.d2, a.d3}; }
inline UniJet3 operator+(double c, const UniJet3& a) { return a + c; }

// ---- BiJet2 arithmetic -----------------------------------------------------

inline BiJet2 operator+(const BiJet2& a, const BiJet2& b) {
  return {a.v + b.v, a.ds + b.ds, a.dt + b.dt, a.dss + b.dss, a.dst + b.dst, a.dtt + b.dtt};
}
inline BiJet2 operator-(const BiJet2& a, const BiJet2& b) {
  return {a.v - b.v, a.ds - b.ds, a.dt - b.dt, a.dss - b.dss, a.dst - b.dst, a.dtt - b.dtt};
}
inline BiJet2 operator-(const BiJet2& a) { return {-a.v, -a.ds, -a.dt, -a.dss, -a.dst, -a.dtt}; }
inline BiJet2 operator*(const BiJet2& a, const BiJet2& b) {
  return {a.v * b.v,
          a.ds * b.v + a.v * b.ds,
          a.dt * b.v + a.v * b.dt,
          a.dss * b.v + 2.0 * a.ds * b.ds + a.v * b.dss,
          a.dst * b.v + a.ds * b.dt + a.dt * b.ds + a.v * b.dst,
          a.dtt * b.v + 2.0 * a.dt * b.dt + a.v * b.dtt};
}
inline BiJet2 operator*(double c, const BiJet2& a) {
  return {c * a.v, c * a.ds, c * a.dt, c * a.dss, c * a.dst, c * a.dtt};
}
inline BiJet2 operator*(const BiJet2& a, double c) { return c * a; }
inline BiJet2 operator+(const BiJet2& a, double c) {
  return {a.v + c, a.ds, a.dt, a.dss, a.dst, a.dtt};
}
inline BiJet2 operator+(double c, const BiJet2& a) { return a + c; }

/// Lift a jet in s (resp. t) into the two-variable jet space.
inline BiJet2 lift_s(const UniJet3& u) { return {u.v, u.d1, 0.0, u.d2, 0.0, 0.0}; }
inline BiJet2 lift_t(const UniJet3& w) { return {w.v, 0.0, w.d1, 0.0, 0.0, w.d2}; }

enum class CombineOp { Add, Mul };

/// Combine u(s) and w(t) into a BiJet2 of u(s)+w(t) or u(s)*w(t). The add
/// case has dst == 0 exactly; the mul case has dst == u.d1*w.d1 exactly.
inline BiJet2 bijet_combine(const UniJet3& u, const UniJet3& w, CombineOp op) {
  if (op == CombineOp::Add) {
    return {u.v + w.v, u.d1, w.d1, u.d2, 0.0, w.d2};
  }
  return {u.v * w.v, u.d1 * w.v, u.v * w.d1, u.d2 * w.v, u.d1 * w.d1, u.v * w.d2};
}

// ---- outer derivative tables ----------------------------------------------

namespace outer {

inline OuterDerivs exp(double u) {
  const double e = std::exp(u);
  return {e, e, e, e};
}
inline OuterDerivs log(double u) {
  return {std::log(u), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u)};
}
inline OuterDerivs sin(double u) {
  const double s = std::sin(u), c = std::cos(u);
  return {s, c, -s, -c};
}
inline OuterDerivs cos(double u) {
  const double s = std::sin(u), c = std::cos(u);
  return {c, -s, -c, s};
}
inline OuterDerivs tan(double u) {
  const double t = std::tan(u);
  const double sec2 = 1.0 + t * t;
  return {t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (1.0 + 3.0 * t * t)};
}
inline OuterDerivs sinh(double u) {
  const double s = std::sinh(u), c = std::cosh(u);
  return {s, c, s, c};
}
inline OuterDerivs cosh(double u) {
  const double s = std::sinh(u), c = std::cosh(u);
  return {c, s, c, s};
}
inline OuterDerivs reciprocal(double u) {
  const double r = 1.0 / u;
  return {r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r};
}

/// u^c for a real exponent. Falling-factorial coefficients that vanish (integer
/// c) contribute exactly zero so that e.g. u^2 at u=0 stays finite.
inline OuterDerivs power(double u, double c) {
  double out[4];
  double coeff = 1.0;
  for (int k = 0; k < 4; ++k) {
    out[k] = coeff == 0.0 ? 0.0 : coeff * std::pow(u, c - k);
    coeff *= (c - k);
  }
  return {out[0], out[1], out[2], out[3]};
}

}  // namespace outer

}  // namespace transurf
