#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "transurf/geometry.hpp"

namespace transurf {

/// Uniform ns x nt grid; node (i, j) sits at (s_i, t_j).
struct GridSpec {
  Interval s;
  Interval t;
  int ns = 2;
  int nt = 2;

  double s_at(int i) const { return node(s, ns, i); }
  double t_at(int j) const { return node(t, nt, j); }
  static double node(const Interval& I, int n, int i) {
    if (n == 1 || i == 0) return I.lo;
    if (i == n - 1) return I.hi;
    return std::min(I.hi, I.lo + (I.hi - I.lo) * i / (n - 1));
  }
  std::size_t nodes() const { return static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt); }
};

/// Grid covering the whole surface domain.
GridSpec grid_over(const Rect& domain, int ns, int nt);

/// Throws SpecError if counts < 2 or the ranges leave the surface domain.
void validate_grid(const GridSpec& grid, const Surface& S);

struct CurvatureSample {
  double s = 0, t = 0;
  double K = 0, H = 0;
  double EGmF2 = 0;
  Character character = Character::Spacelike;
};

struct SampleSet {
  std::vector<CurvatureSample> samples;  // row-major: s outer, t inner
  std::size_t skipped_degenerate = 0;
};

/// K and H at every non-degenerate node. Degenerate and causality-violating
/// nodes are counted and skipped. The result does not depend on `threads`.
/// Throws AllDegenerateError if no node survives.
SampleSet sample_curvature(const Surface& S, const Metric& M, const GridSpec& grid,
                           unsigned threads = 1);

enum class Quantity { K, H };
enum class Verdict { Pass, Fail };

const char* to_string(Quantity q);
const char* to_string(Verdict v);

struct ConstancyReport {
  Quantity quantity = Quantity::K;
  double mean = 0.0;
  double max_abs_dev = 0.0;
  std::optional<double> expected;
  double tol = 0.0;
  Verdict verdict = Verdict::Fail;
  std::size_t n_samples = 0;
  std::size_t skipped_degenerate = 0;
};

/// Pass iff max |value - (expected or mean)| <= tol.
ConstancyReport check_constancy(const SampleSet& set, Quantity quantity,
                                std::optional<double> expected, double tol);

/// Default tolerances for theorem-level claims.
constexpr double kTolH = 1e-10;
constexpr double kTolK = 1e-9;
constexpr double kTolOracle = 1e-5;

struct CurvaturePair {
  double K = 0.0;
  double H = 0.0;
};

/// K and H from O(h^2) central differences of the embedding values only.
/// Throws DomainError if the stencil leaves the domain.
CurvaturePair fd_oracle(const Surface& S, const Metric& M, double s, double t, double h = 1e-3);

enum class FlatKind { Plane, CylindricalAlong, NotFlat, Unclassified };

const char* to_string(FlatKind k);

struct FlatClassification {
  FlatKind kind = FlatKind::Unclassified;
  Vec3 direction{};  // unit ruling direction for CylindricalAlong
  double max_abs_K = 0.0;
};

/// Decide which flat translation-surface case applies: straight generator
/// (cylinder along it), both straight (plane), or not flat at all.
FlatClassification classify_flat_translation(const Surface& S, const GridSpec& grid,
                                             double k_tol = kTolK);

/// max |c''| <= 1e-10 (1 + max |c|) per component over 101 samples.
bool is_straight(const Curve3& c, const Interval& range);

// ---- ODE cross-checks ------------------------------------------------------

/// g' = k (1 + a^2 g^2), solved by g = tan(a k y + d) / a.
struct TanOde {
  double a = 1.0, k = 1.0, d = 0.0;
};
/// f' = b f^a, g' = c g^(1/a), a != 1.
struct PowerBranchOde {
  double a = 2.0, b = 1.0, c = 1.0, p = 1.0, q = 1.0;
};
/// f' = b f, g' = c g, solved by p e^(bx), q e^(cy).
struct ExpBranchOde {
  double b = 1.0, c = 1.0, p = 1.0, q = 1.0;
};
using OdeProblem = std::variant<TanOde, PowerBranchOde, ExpBranchOde>;

/// Classical RK4 from the closed form's initial value over `interval`;
/// returns max |numeric - closed form| over all steps and components.
/// Throws SingularityError if the right-hand side exceeds 1e8 in magnitude
/// or the closed form is not finite.
double ode_crosscheck(const OdeProblem& ode, Interval interval, int steps);

constexpr double kOdeMagnitudeCap = 1e8;

// ---- nonexistence probe ----------------------------------------------------

enum class ProbeKind { TranslationPlanarGenerator, HomotheticalNonzeroK };

struct ProbeProblem {
  ProbeKind kind = ProbeKind::HomotheticalNonzeroK;
  double K0 = 1.0;
};

std::string_view probe_id(ProbeKind k);
std::optional<ProbeKind> probe_from_id(std::string_view id);

struct ProbeResult {
  std::string problem;
  double K0 = 0.0;
  double best_residual = 0.0;  // mean-square deviation of sampled K from K0
  std::size_t iterations = 0;  // simplex iterations summed over restarts
  std::uint64_t seed = 0;
  int budget = 0;
  std::vector<double> params;  // polynomial coefficients of the best candidate

  friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
};

/// Degree of the polynomial free functions in the probe.
constexpr int kProbeDegree = 6;
/// Empirical lower bound on best_residual for HomotheticalNonzeroK(K0=1),
/// seed 42, budget 20; pinned from observed runs.
extern const double kHomotheticalUnitKFloor;

/// Minimize the mean-square deviation of sampled K from K0 over polynomial
/// generators with `budget` seeded Nelder-Mead restarts. Deterministic given
/// (problem, seed, budget) regardless of `threads`.
ProbeResult nonexistence_probe(const ProbeProblem& problem, std::uint64_t seed, int budget,
                               unsigned threads = 1);

}  // namespace transurf
