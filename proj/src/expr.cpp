#include "transurf/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "format.hpp"
#include "transurf/errors.hpp"

namespace transurf {

struct Expr::Node {
  ExprOp op;
  double number = 0.0;
  int var = 0;
  bool has_var = false;
  std::vector<Expr> args;
};

namespace {

struct OpName {
  ExprOp op;
  std::string_view name;
  int arity;  // -1: n-ary (>= 2)
};

constexpr std::array<OpName, 13> kOps{{
    {ExprOp::Add, "add", -1},
    {ExprOp::Sub, "sub", 2},
    {ExprOp::Mul, "mul", -1},
    {ExprOp::Div, "div", 2},
    {ExprOp::Pow, "pow", 2},
    {ExprOp::Neg, "neg", 1},
    {ExprOp::Exp, "exp", 1},
    {ExprOp::Log, "log", 1},
    {ExprOp::Sin, "sin", 1},
    {ExprOp::Cos, "cos", 1},
    {ExprOp::Tan, "tan", 1},
    {ExprOp::Sinh, "sinh", 1},
    {ExprOp::Cosh, "cosh", 1},
}};

std::string_view op_name(ExprOp op) {
  for (const auto& o : kOps) {
    if (o.op == op) return o.name;
  }
  return "?";
}

bool is_integer(double c) { return std::floor(c) == c; }


template <class T>
T check_finite(T value, ExprOp op) {
  if (!is_finite(value)) {
    throw DomainError("non-finite result in '" + std::string(op_name(op)) + "'");
  }
  return value;
}

template <class T>
T lift_constant(double c) {
  if constexpr (std::is_same_v<T, double>) {
    return c;
  } else {
    return T::constant(c);
  }
}

template <class T>
T eval_node(const Expr& e, std::span<const T> vars) {
  const auto args = e.args();
  switch (e.op()) {
    case ExprOp::Const:
      return lift_constant<T>(e.number());
    case ExprOp::Var:
      if (static_cast<std::size_t>(e.var_index()) >= vars.size()) {
        throw DomainError("expression uses a variable that was not supplied");
      }
      return vars[static_cast<std::size_t>(e.var_index())];
    case ExprOp::Neg:
      return check_finite(-eval_node(args[0], vars), e.op());
    case ExprOp::Add: {
      T acc = eval_node(args[0], vars);
      for (std::size_t i = 1; i < args.size(); ++i) acc = acc + eval_node(args[i], vars);
      return check_finite(acc, e.op());
    }
    case ExprOp::Sub:
      return check_finite(eval_node(args[0], vars) - eval_node(args[1], vars), e.op());
    case ExprOp::Mul: {
      T acc = eval_node(args[0], vars);
      for (std::size_t i = 1; i < args.size(); ++i) acc = acc * eval_node(args[i], vars);
      return check_finite(acc, e.op());
    }
    case ExprOp::Div: {
      const T num = eval_node(args[0], vars);
      const T den = eval_node(args[1], vars);
      if (value_of(den) == 0.0) throw DomainError("division by zero");
      return check_finite(num * compose(den, outer::reciprocal(value_of(den))), e.op());
    }
    case ExprOp::Pow: {
      const T base = eval_node(args[0], vars);
      const double c = e.number();
      const double b = value_of(base);
      if (!is_integer(c) && b <= 0.0) {
        throw DomainError("non-integer power of non-positive base");
      }
      return check_finite(compose(base, outer::power(b, c)), e.op());
    }
    case ExprOp::Log: {
      const T u = eval_node(args[0], vars);
      if (value_of(u) <= 0.0) throw DomainError("log of non-positive argument");
      return check_finite(compose(u, outer::log(value_of(u))), e.op());
    }
    case ExprOp::Exp: {
      const T u = eval_node(args[0], vars);
      return check_finite(compose(u, outer::exp(value_of(u))), e.op());
    }
    case ExprOp::Sin: {
      const T u = eval_node(args[0], vars);
      return check_finite(compose(u, outer::sin(value_of(u))), e.op());
    }
    case ExprOp::Cos: {
      const T u = eval_node(args[0], vars);
      return check_finite(compose(u, outer::cos(value_of(u))), e.op());
    }
    case ExprOp::Tan: {
      const T u = eval_node(args[0], vars);
      if (std::cos(value_of(u)) == 0.0) throw DomainError("tan at a pole");
      return check_finite(compose(u, outer::tan(value_of(u))), e.op());
    }
    case ExprOp::Sinh: {
      const T u = eval_node(args[0], vars);
      return check_finite(compose(u, outer::sinh(value_of(u))), e.op());
    }
    case ExprOp::Cosh: {
      const T u = eval_node(args[0], vars);
      return check_finite(compose(u, outer::cosh(value_of(u))), e.op());
    }
  }
  throw DomainError("unknown expression node");
}

// ---- reader ----------------------------------------------------------------

class Reader {
 public:
  Reader(std::string_view text, VarSet vars) : text_(text), vars_(vars) {}

  Expr read_all() {
    Expr e = read();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch))) break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  Expr read() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    if (text_[pos_] == ')') throw ParseError("unexpected ')'", pos_);
    if (text_[pos_] == '(') return read_list();
    const std::size_t start = pos_;
    return read_atom(atom(), start);
  }

  Expr read_atom(std::string_view tok, std::size_t start) {
    if (int idx = variable_index(tok); idx >= 0) return Expr::variable(idx);
    if (tok == "pi") return Expr::constant(3.14159265358979323846);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      throw ParseError("unknown symbol '" + std::string(tok) + "'", start);
    }
    return Expr::constant(v);
  }

  int variable_index(std::string_view tok) const {
    if (vars_ == VarSet::Univariate) {
      if (tok == "x" || tok == "y" || tok == "z" || tok == "s" || tok == "t") return 0;
      return -1;
    }
    if (tok == "s") return 0;
    if (tok == "t") return 1;
    return -1;
  }

  Expr read_list() {
    const std::size_t open = pos_;
    ++pos_;
    skip_ws();
    const std::size_t head_pos = pos_;
    const std::string_view head = atom();
    const OpName* op = nullptr;
    for (const auto& o : kOps) {
      if (o.name == head) op = &o;
    }
    if (op == nullptr) {
      throw ParseError("unknown operator '" + std::string(head) + "'", head_pos);
    }
    std::vector<Expr> args;
    std::vector<std::size_t> arg_pos;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unclosed '('", open);
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      arg_pos.push_back(pos_);
      args.push_back(read());
    }
    const int n = static_cast<int>(args.size());
    if ((op->arity == -1 && n < 2) || (op->arity >= 0 && n != op->arity)) {
      throw ParseError("wrong number of arguments to '" + std::string(op->name) + "'", head_pos);
    }
    switch (op->op) {
      case ExprOp::Add:
      case ExprOp::Mul: {
        Expr acc = args[0];
        for (int i = 1; i < n; ++i) acc = Expr::binary(op->op, acc, args[i]);
        return acc;
      }
      case ExprOp::Sub:
      case ExprOp::Div:
        return Expr::binary(op->op, args[0], args[1]);
      case ExprOp::Pow: {
        if (args[1].has_variable()) {
          throw ParseError("exponent of 'pow' must be constant", arg_pos[1]);
        }
        const double c = args[1].eval<double>(std::span<const double>{});
        return Expr::pow(args[0], c);
      }
      default:
        return Expr::unary(op->op, args[0]);
    }
  }

  std::string_view text_;
  VarSet vars_;
  std::size_t pos_ = 0;
};

void write(std::ostringstream& out, const Expr& e, VarSet vars) {
  switch (e.op()) {
    case ExprOp::Const:
      out << detail::format_shortest(e.number());
      return;
    case ExprOp::Var:
      if (vars == VarSet::Univariate) {
        out << 'x';
      } else {
        out << (e.var_index() == 0 ? 's' : 't');
      }
      return;
    case ExprOp::Pow:
      out << "(pow ";
      write(out, e.args()[0], vars);
      out << ' ' << detail::format_shortest(e.number()) << ')';
      return;
    default:
      out << '(' << op_name(e.op());
      for (const auto& a : e.args()) {
        out << ' ';
        write(out, a, vars);
      }
      out << ')';
  }
}

}  // namespace

Expr Expr::constant(double c) {
  return Expr(std::make_shared<const Node>(Node{ExprOp::Const, c, 0, false, {}}));
}

Expr Expr::variable(int index) {
  return Expr(std::make_shared<const Node>(Node{ExprOp::Var, 0.0, index, true, {}}));
}

Expr Expr::unary(ExprOp op, Expr arg) {
  const bool v = arg.has_variable();
  return Expr(std::make_shared<const Node>(Node{op, 0.0, 0, v, {std::move(arg)}}));
}

Expr Expr::binary(ExprOp op, Expr lhs, Expr rhs) {
  const bool v = lhs.has_variable() || rhs.has_variable();
  return Expr(std::make_shared<const Node>(Node{op, 0.0, 0, v, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::pow(Expr base, double exponent) {
  const bool v = base.has_variable();
  return Expr(std::make_shared<const Node>(Node{ExprOp::Pow, exponent, 0, v, {std::move(base)}}));
}

ExprOp Expr::op() const { return node_->op; }
double Expr::number() const { return node_->number; }
int Expr::var_index() const { return node_->var; }
std::span<const Expr> Expr::args() const { return node_->args; }
bool Expr::has_variable() const { return node_->has_var; }

template <class T>
T Expr::eval(std::span<const T> vars) const {
  return eval_node<T>(*this, vars);
}

template double Expr::eval<double>(std::span<const double>) const;
template UniJet3 Expr::eval<UniJet3>(std::span<const UniJet3>) const;
template BiJet2 Expr::eval<BiJet2>(std::span<const BiJet2>) const;

Expr ex::polynomial(std::span<const double> coeffs, Expr var) {
  if (coeffs.empty()) return c(0.0);
  // Horner form keeps the tree shallow in multiplications.
  Expr acc = c(coeffs.back());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc = acc * var + c(coeffs[k]);
  }
  return acc;
}

Expr parse_expr(std::string_view text, VarSet vars) { return Reader(text, vars).read_all(); }

std::string to_sexpr(const Expr& e, VarSet vars) {
  std::ostringstream out;
  write(out, e, vars);
  return out.str();
}

namespace {

std::string describe(double x) { return detail::format_shortest(x); }

}  // namespace

UniJet3 SmoothFn1::jet(double x) const {
  if (!domain.contains(x)) {
    throw DomainError("point " + describe(x) + " outside validity interval [" +
                      describe(domain.lo) + ", " + describe(domain.hi) + "]");
  }
  const UniJet3 var = UniJet3::variable(x);
  return expr.eval<UniJet3>(std::span<const UniJet3>(&var, 1));
}

double SmoothFn1::value(double x) const {
  if (!domain.contains(x)) {
    throw DomainError("point " + describe(x) + " outside validity interval [" +
                      describe(domain.lo) + ", " + describe(domain.hi) + "]");
  }
  return expr.eval<double>(std::span<const double>(&x, 1));
}

BiJet2 SmoothFn2::jet(double s, double t) const {
  if (!domain.contains(s, t)) {
    throw DomainError("point (" + describe(s) + ", " + describe(t) + ") outside validity rectangle");
  }
  const std::array<BiJet2, 2> vars{BiJet2::variable_s(s), BiJet2::variable_t(t)};
  return expr.eval<BiJet2>(vars);
}

double SmoothFn2::value(double s, double t) const {
  if (!domain.contains(s, t)) {
    throw DomainError("point (" + describe(s) + ", " + describe(t) + ") outside validity rectangle");
  }
  const std::array<double, 2> vars{s, t};
  return expr.eval<double>(vars);
}

}  // namespace transurf
