#include "transurf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "parallel.hpp"
#include "transurf/errors.hpp"
#include "transurf/nelder_mead.hpp"

namespace transurf {

GridSpec grid_over(const Rect& domain, int ns, int nt) { return {domain.s, domain.t, ns, nt}; }

void validate_grid(const GridSpec& grid, const Surface& S) {
  if (grid.ns < 2 || grid.nt < 2) throw SpecError("grid counts must be >= 2");
  if (!(grid.s.lo <= grid.s.hi) || !(grid.t.lo <= grid.t.hi)) {
    throw SpecError("grid ranges must be ordered");
  }
  if (!S.domain().contains(Rect{grid.s, grid.t})) {
    throw SpecError("grid ranges leave the surface domain");
  }
}

const char* to_string(Quantity q) { return q == Quantity::K ? "K" : "H"; }
const char* to_string(Verdict v) { return v == Verdict::Pass ? "Pass" : "Fail"; }

const char* to_string(FlatKind k) {
  switch (k) {
    case FlatKind::Plane:
      return "Plane";
    case FlatKind::CylindricalAlong:
      return "CylindricalAlong";
    case FlatKind::NotFlat:
      return "NotFlat";
    case FlatKind::Unclassified:
      return "Unclassified";
  }
  return "?";
}

SampleSet sample_curvature(const Surface& S, const Metric& M, const GridSpec& grid,
                           unsigned threads) {
  validate_grid(grid, S);
  const std::size_t total = grid.nodes();
  std::vector<std::optional<CurvatureSample>> slots(total);
  detail::parallel_for(total, threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(grid.nt));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(grid.nt));
    const double s = grid.s_at(i), t = grid.t_at(j);
    try {
      const FundamentalForms ff = fundamental_forms(S, M, s, t);
      slots[idx] = CurvatureSample{s, t, gauss_curvature(ff), mean_curvature(ff), ff.det(),
                                   ff.character};
    } catch (const DegenerateError&) {
    } catch (const CausalityError&) {
    }
  });
  SampleSet out;
  out.samples.reserve(total);
  for (auto& slot : slots) {
    if (slot) {
      out.samples.push_back(*slot);
    } else {
      ++out.skipped_degenerate;
    }
  }
  if (out.samples.empty()) {
    throw AllDegenerateError("all " + std::to_string(total) +
                             " grid nodes are degenerate or violate the causal constraint");
  }
  return out;
}

ConstancyReport check_constancy(const SampleSet& set, Quantity quantity,
                                std::optional<double> expected, double tol) {
  ConstancyReport r;
  r.quantity = quantity;
  r.expected = expected;
  r.tol = tol;
  r.n_samples = set.samples.size();
  r.skipped_degenerate = set.skipped_degenerate;
  if (set.samples.empty()) return r;

  auto value = [&](const CurvatureSample& c) { return quantity == Quantity::K ? c.K : c.H; };
  double sum = 0.0;
  for (const auto& c : set.samples) sum += value(c);
  r.mean = sum / static_cast<double>(set.samples.size());
  const double ref = expected.value_or(r.mean);
  for (const auto& c : set.samples) r.max_abs_dev = std::max(r.max_abs_dev, std::abs(value(c) - ref));
  r.verdict = r.max_abs_dev <= tol ? Verdict::Pass : Verdict::Fail;
  return r;
}

CurvaturePair fd_oracle(const Surface& S, const Metric& M, double s, double t, double h) {
  const Rect& dom = S.domain();
  if (!dom.contains(s - h, t - h) || !dom.contains(s + h, t + h)) {
    throw DomainError("finite-difference stencil leaves the surface domain");
  }
  const Vec3 c = S.embed(s, t);
  const Vec3 sp = S.embed(s + h, t), sm = S.embed(s - h, t);
  const Vec3 tp = S.embed(s, t + h), tm = S.embed(s, t - h);
  const Vec3 pp = S.embed(s + h, t + h), pm = S.embed(s + h, t - h);
  const Vec3 mp = S.embed(s - h, t + h), mm = S.embed(s - h, t - h);

  Vec3 Xs, Xt, Xss, Xtt, Xst;
  for (int k = 0; k < 3; ++k) {
    Xs[k] = (sp[k] - sm[k]) / (2.0 * h);
    Xt[k] = (tp[k] - tm[k]) / (2.0 * h);
    Xss[k] = (sp[k] - 2.0 * c[k] + sm[k]) / (h * h);
    Xtt[k] = (tp[k] - 2.0 * c[k] + tm[k]) / (h * h);
    Xst[k] = (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h);
  }
  const double E = M.dot(Xs, Xs), F = M.dot(Xs, Xt), G = M.dot(Xt, Xt);
  const double W = E * G - F * F;
  const Vec3 n = M.cross(Xs, Xt);
  const double nn = M.dot(n, n);
  if (W == 0.0 || nn == 0.0) throw DegenerateError("finite-difference normal is degenerate");
  const double eps = nn > 0.0 ? 1.0 : -1.0;
  const double inv = 1.0 / std::sqrt(std::abs(nn));
  const double l = M.dot(Xss, n) * inv, m = M.dot(Xst, n) * inv, nf = M.dot(Xtt, n) * inv;
  return {eps * (l * nf - m * m) / W, eps * 0.5 * (l * G - 2.0 * m * F + nf * E) / W};
}

// ---- flat translation classification --------------------------------------

bool is_straight(const Curve3& c, const Interval& range) {
  constexpr int kSamples = 101;
  std::array<double, 3> max_dd{}, max_v{};
  for (int i = 0; i < kSamples; ++i) {
    const double u = range.lo + range.width() * i / (kSamples - 1);
    const auto j = c.jets(u);
    for (int k = 0; k < 3; ++k) {
      max_dd[k] = std::max(max_dd[k], std::abs(j[k].d2));
      max_v[k] = std::max(max_v[k], std::abs(j[k].v));
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (max_dd[k] > 1e-10 * (1.0 + max_v[k])) return false;
  }
  return true;
}

namespace {

Vec3 unit_tangent(const Curve3& c, double u) {
  const auto j = c.jets(u);
  Vec3 d{j[0].d1, j[1].d1, j[2].d1};
  const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  d = (1.0 / n) * d;
  // Lines have no orientation; fix the sign by the largest component.
  const auto big = std::max_element(d.begin(), d.end(),
                                    [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*big < 0.0) d = -1.0 * d;
  return d;
}

}  // namespace

FlatClassification classify_flat_translation(const Surface& S, const GridSpec& grid, double k_tol) {
  const auto* tr = std::get_if<Translation>(&S.shape());
  if (tr == nullptr) throw SpecError("classify_flat_translation needs a translation surface");

  FlatClassification out;
  const SampleSet set = sample_curvature(S, Metric::euclidean(), grid);
  for (const auto& c : set.samples) out.max_abs_K = std::max(out.max_abs_K, std::abs(c.K));
  if (out.max_abs_K > k_tol) {
    out.kind = FlatKind::NotFlat;
    return out;
  }
  const bool alpha_straight = is_straight(tr->alpha, grid.s);
  const bool beta_straight = is_straight(tr->beta, grid.t);
  if (alpha_straight && beta_straight) {
    out.kind = FlatKind::Plane;
  } else if (alpha_straight) {
    out.kind = FlatKind::CylindricalAlong;
    out.direction = unit_tangent(tr->alpha, grid.s.mid());
  } else if (beta_straight) {
    out.kind = FlatKind::CylindricalAlong;
    out.direction = unit_tangent(tr->beta, grid.t.mid());
  } else {
    out.kind = FlatKind::Unclassified;
  }
  return out;
}

// ---- ODE cross-checks ------------------------------------------------------

namespace {

using State = std::array<double, 2>;

struct OdeSystem {
  std::function<State(double, const State&)> rhs;
  std::function<State(double)> exact;
};

OdeSystem system_for(const OdeProblem& ode) {
  return std::visit(
      [](const auto& p) -> OdeSystem {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TanOde>) {
          return {[p](double, const State& y) {
                    return State{p.k * (1.0 + p.a * p.a * y[0] * y[0]), 0.0};
                  },
                  [p](double x) { return State{std::tan(p.a * p.k * x + p.d) / p.a, 0.0}; }};
        } else if constexpr (std::is_same_v<T, PowerBranchOde>) {
          if (p.a == 1.0 || p.a == 0.0) throw SpecError("power branch requires a not in {0, 1}");
          return {[p](double, const State& y) {
                    return State{p.b * std::pow(y[0], p.a), p.c * std::pow(y[1], 1.0 / p.a)};
                  },
                  [p](double x) {
                    return State{std::pow((1.0 - p.a) * p.b * x + p.p, 1.0 / (1.0 - p.a)),
                                 std::pow((p.a - 1.0) / p.a * p.c * x + p.q, p.a / (p.a - 1.0))};
                  }};
        } else {
          return {[p](double, const State& y) { return State{p.b * y[0], p.c * y[1]}; },
                  [p](double x) { return State{p.p * std::exp(p.b * x), p.q * std::exp(p.c * x)}; }};
        }
      },
      ode);
}

State checked_exact(const OdeSystem& sys, double x) {
  const State y = sys.exact(x);
  if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
    throw SingularityError("closed form is singular at " + std::to_string(x));
  }
  return y;
}

State checked_rhs(const OdeSystem& sys, double x, const State& y) {
  const State d = sys.rhs(x, y);
  for (double v : d) {
    if (!std::isfinite(v) || std::abs(v) > kOdeMagnitudeCap) {
      throw SingularityError("right-hand side exceeds magnitude cap near " + std::to_string(x));
    }
  }
  return d;
}

}  // namespace

double ode_crosscheck(const OdeProblem& ode, Interval interval, int steps) {
  if (steps < 1) throw SpecError("steps must be >= 1");
  if (!(interval.lo < interval.hi)) throw SpecError("interval must be non-empty");
  const OdeSystem sys = system_for(ode);
  const double h = interval.width() / steps;
  State y = checked_exact(sys, interval.lo);
  double max_err = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = interval.lo + h * i;
    const State k1 = checked_rhs(sys, x, y);
    State tmp{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
    const State k2 = checked_rhs(sys, x + 0.5 * h, tmp);
    tmp = {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
    const State k3 = checked_rhs(sys, x + 0.5 * h, tmp);
    tmp = {y[0] + h * k3[0], y[1] + h * k3[1]};
    const State k4 = checked_rhs(sys, x + h, tmp);
    for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    const double xn = i + 1 == steps ? interval.hi : interval.lo + h * (i + 1);
    const State ref = checked_exact(sys, xn);
    for (int c = 0; c < 2; ++c) max_err = std::max(max_err, std::abs(y[c] - ref[c]));
  }
  return max_err;
}

// ---- nonexistence probe ----------------------------------------------------

const double kHomotheticalUnitKFloor = 5e-6;

std::string_view probe_id(ProbeKind k) {
  return k == ProbeKind::HomotheticalNonzeroK ? "homothetical_nonzero_k"
                                              : "translation_planar_generator";
}

std::optional<ProbeKind> probe_from_id(std::string_view id) {
  if (id == "homothetical_nonzero_k") return ProbeKind::HomotheticalNonzeroK;
  if (id == "translation_planar_generator") return ProbeKind::TranslationPlanarGenerator;
  return std::nullopt;
}

namespace {

constexpr int kCoeffs = kProbeDegree + 1;
constexpr int kProbeGrid = 7;
constexpr double kProbeHalfWidth = 0.5;

UniJet3 poly_jet(std::span<const double> coeffs, double x) {
  UniJet3 acc = UniJet3::constant(coeffs.back());
  const UniJet3 var = UniJet3::variable(x);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * var + coeffs[k];
  return acc;
}

double probe_node(int i) { return -kProbeHalfWidth + 2.0 * kProbeHalfWidth * i / (kProbeGrid - 1); }

// Mean-square deviation of K from K0 over the probe grid.
double probe_objective(ProbeKind kind, double K0, std::span<const double> p) {
  std::array<UniJet3, kProbeGrid> a{}, b{}, c{};
  double sum = 0.0;
  try {
    if (kind == ProbeKind::HomotheticalNonzeroK) {
      for (int i = 0; i < kProbeGrid; ++i) {
        a[i] = poly_jet(p.subspan(0, kCoeffs), probe_node(i));
        b[i] = poly_jet(p.subspan(kCoeffs, kCoeffs), probe_node(i));
      }
      for (int i = 0; i < kProbeGrid; ++i) {
        for (int j = 0; j < kProbeGrid; ++j) {
          const double K =
              homothetical_gauss_closed(a[i], b[j], Signature::Euclidean, GraphAxis::Z);
          sum += (K - K0) * (K - K0);
        }
      }
    } else {
      // alpha = (s, 0, f(s)) planar; beta = (g1(t), t, g2(t)).
      for (int i = 0; i < kProbeGrid; ++i) {
        a[i] = poly_jet(p.subspan(0, kCoeffs), probe_node(i));
        b[i] = poly_jet(p.subspan(kCoeffs, kCoeffs), probe_node(i));
        c[i] = poly_jet(p.subspan(2 * kCoeffs, kCoeffs), probe_node(i));
      }
      for (int i = 0; i < kProbeGrid; ++i) {
        for (int j = 0; j < kProbeGrid; ++j) {
          const double K = translation_gauss_closed({UniJet3{}, a[i], b[j], c[j]},
                                                    Signature::Euclidean);
          sum += (K - K0) * (K - K0);
        }
      }
    }
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
  return sum / (kProbeGrid * kProbeGrid);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ProbeResult nonexistence_probe(const ProbeProblem& problem, std::uint64_t seed, int budget,
                               unsigned threads) {
  if (budget < 1) throw SpecError("probe budget must be >= 1");
  const int dim = problem.kind == ProbeKind::HomotheticalNonzeroK ? 2 * kCoeffs : 3 * kCoeffs;
  const auto restarts = static_cast<std::size_t>(budget);
  std::vector<NelderMeadResult> results(restarts);

  detail::parallel_for(restarts, threads, [&](std::size_t r) {
    // mt19937_64 output is fixed by the standard; avoid the
    // implementation-defined distributions.
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r)));
    std::vector<double> start(static_cast<std::size_t>(dim));
    for (double& v : start) v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    NelderMeadOptions opts;
    opts.max_iterations = 40000;
    results[r] = nelder_mead(
        [&](std::span<const double> p) { return probe_objective(problem.kind, problem.K0, p); },
        std::move(start), opts);
  });

  ProbeResult out;
  out.problem = std::string(probe_id(problem.kind));
  out.K0 = problem.K0;
  out.seed = seed;
  out.budget = budget;
  out.best_residual = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    out.iterations += r.iterations;
    if (r.value < out.best_residual) {
      out.best_residual = r.value;
      out.params = r.x;
    }
  }
  return out;
}

}  // namespace transurf
