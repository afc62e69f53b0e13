#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "transurf/jets.hpp"

namespace transurf {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Rect {
  Interval s;
  Interval t;

  bool contains(double ps, double pt) const { return s.contains(ps) && t.contains(pt); }
  bool contains(const Rect& other) const { return s.contains(other.s) && t.contains(other.t); }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class ExprOp { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Sin, Cos, Tan, Sinh, Cosh };

/// Which variable names the S-expression reader accepts. Univariate
/// expressions take any of x, y, z, s, t as the single variable; bivariate
/// ones take s (index 0) and t (index 1).
enum class VarSet { Univariate, Bivariate };

/// Immutable expression tree over the closed elementary grammar. Copies share
/// structure.
class Expr {
 public:
  static Expr constant(double c);
  static Expr variable(int index = 0);
  static Expr unary(ExprOp op, Expr arg);
  static Expr binary(ExprOp op, Expr lhs, Expr rhs);
  /// Power with a real (variable-free) exponent.
  static Expr pow(Expr base, double exponent);

  ExprOp op() const;
  /// Constant value for Const nodes, exponent for Pow nodes.
  double number() const;
  int var_index() const;
  std::span<const Expr> args() const;
  bool has_variable() const;

  /// Evaluate with the given variable values. Throws DomainError on a
  /// singular intermediate or any non-finite result.
  template <class T>
  T eval(std::span<const T> vars) const;

  friend Expr operator+(const Expr& a, const Expr& b) { return binary(ExprOp::Add, a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return binary(ExprOp::Sub, a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return binary(ExprOp::Mul, a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return binary(ExprOp::Div, a, b); }
  friend Expr operator-(const Expr& a) { return unary(ExprOp::Neg, a); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace ex {

inline Expr c(double v) { return Expr::constant(v); }
inline Expr x() { return Expr::variable(0); }
inline Expr s() { return Expr::variable(0); }
inline Expr t() { return Expr::variable(1); }
inline Expr exp(Expr a) { return Expr::unary(ExprOp::Exp, std::move(a)); }
inline Expr log(Expr a) { return Expr::unary(ExprOp::Log, std::move(a)); }
inline Expr sin(Expr a) { return Expr::unary(ExprOp::Sin, std::move(a)); }
inline Expr cos(Expr a) { return Expr::unary(ExprOp::Cos, std::move(a)); }
inline Expr tan(Expr a) { return Expr::unary(ExprOp::Tan, std::move(a)); }
inline Expr sinh(Expr a) { return Expr::unary(ExprOp::Sinh, std::move(a)); }
inline Expr cosh(Expr a) { return Expr::unary(ExprOp::Cosh, std::move(a)); }
inline Expr pow(Expr a, double e) { return Expr::pow(std::move(a), e); }
/// sum_k coeffs[k] * x^k
Expr polynomial(std::span<const double> coeffs, Expr var = x());

}  // namespace ex

/// Parse a prefix S-expression, e.g. `(mul (pow (add (mul 0.5 x) 1.0) 2.0) 3.0)`.
/// Throws ParseError with the byte offset of the offending token.
Expr parse_expr(std::string_view text, VarSet vars = VarSet::Univariate);

/// Inverse of parse_expr; numbers use shortest round-trip formatting.
std::string to_sexpr(const Expr& e, VarSet vars = VarSet::Univariate);

/// One-variable function with its declared validity interval.
struct SmoothFn1 {
  Expr expr;
  Interval domain;

  UniJet3 jet(double x) const;
  double value(double x) const;
};

/// Exact value and derivatives to order 3 of fn at x.
inline UniJet3 jet_eval(const SmoothFn1& fn, double x) { return fn.jet(x); }

/// Two-variable function in (s, t) with its validity rectangle.
struct SmoothFn2 {
  Expr expr;
  Rect domain;

  BiJet2 jet(double s, double t) const;
  double value(double s, double t) const;
};

}  // namespace transurf
