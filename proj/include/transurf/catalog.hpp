#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transurf/geometry.hpp"

namespace transurf {

enum class Family {
  Plane,
  CircularCylinder,
  CylindricalOverCurve,
  Scherk,
  Helicoid,
  ExpHomothetical,
  PowerHomothetical,
  LorentzSpacelikeExp,
  LorentzTimelikeExp,
  LorentzPowerHomothetical,
};

/// Named member of the solution catalog. Missing params take the family
/// defaults; a missing domain takes the singularity-avoiding default.
struct FamilySpec {
  Family name = Family::Plane;
  std::map<std::string, double> params;
  std::optional<Rect> domain;
};

/// Margin kept from tan / log(cos) poles and from zero power bases.
constexpr double kSingularityMargin = 0.1;

std::string_view family_id(Family f);
std::optional<Family> family_from_id(std::string_view id);

/// Lorentzian for the Lorentz* families, Euclidean otherwise.
Metric family_metric(Family f);

/// Full parameter map (defaults merged in). Throws SpecError on unknown keys.
std::map<std::string, double> family_params(const FamilySpec& spec);

/// Build the surface. Throws SpecError naming the violated invariant.
Surface make_family(const FamilySpec& spec);

/// Default domain for the given (validated) parameters.
Rect family_default_domain(const FamilySpec& spec);

std::vector<FamilySpec> list_families();

/// Theorem-form power family from the branch constants of f' = b f^a,
/// g' = c g^(1/a) with f = ((1-a) b x + p)^(1/(1-a)):
/// m = 1/(1-a), d = p, e = q and the g-slope changes sign.
FamilySpec power_family_from_branch(double a, double b, double c, double p, double q);

}  // namespace transurf
