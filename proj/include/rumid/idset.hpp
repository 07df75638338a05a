#pragma once

#include "rumid/choice.hpp"
#include "rumid/error.hpp"
#include "rumid/dag.hpp"
#include "rumid/lp.hpp"
#include "rumid/ryser.hpp"
#include "rumid/rum_graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rumid {

/// The support restriction admits no distribution matching the data.
class InfeasibleRestriction : public DomainError {
 public:
  using DomainError::DomainError;
  const char* reason() const noexcept override { return "infeasible-support"; }
};

struct BoundsQuery {
  SignedMeasure functional;  // weight per preference
  SignedMeasure base;        // a rationalization of the data
  std::optional<std::vector<Preference>> support;
};

struct Bounds {
  Rational min, max;
  SignedMeasure argmin, argmax;
};

enum class BoundsMethod { ryser, simplex };

/// Exact range of the functional over distributions observationally
/// equivalent to `base` (and supported in the restriction, if any).
Bounds bounds(const RyserSpace& space, const BoundsQuery& q);
Bounds bounds_simplex(const Universe& u, const BoundsQuery& q);
Bounds bounds(const Universe& u, const BoundsQuery& q, BoundsMethod method = BoundsMethod::ryser);

/// Base distribution from a choice rule; throws DomainError if the rule is
/// not rationalizable.
SignedMeasure rationalization_of(const RumGraph& g, const ChoiceRule& rho);

/// Path indicators of supp(mu) are independent. Throws DomainError when
/// supp(mu) leaves the restriction.
bool is_extreme(const RumGraph& g, const SignedMeasure& mu, const std::vector<Preference>& s);
bool is_identifying_support(const RumGraph& g, const std::vector<Preference>& s);

inline constexpr std::size_t kDefaultExtremeCap = 64;

/// Every vertex of the identified polytope of rho within the restriction.
std::vector<SignedMeasure> extreme_points(const RumGraph& g, const ChoiceRule& rho, const std::vector<Preference>& s,
                                          std::size_t cap = kDefaultExtremeCap);

/// Generic counterpart on an arbitrary DAG: range of a path functional over
/// nonnegative decompositions of f supported on `paths`.
struct PathBounds {
  Rational min, max;
  PathDecomposition argmin, argmax;
};
PathBounds path_bounds(const Dag& g, const QuasiFlow& f, const std::vector<Path>& paths,
                       const std::vector<Rational>& functional);

/// Generic extreme-point enumeration over decompositions supported on `paths`.
std::vector<PathDecomposition> path_extreme_points(const Dag& g, const QuasiFlow& f, const std::vector<Path>& paths,
                                                   std::size_t cap = kDefaultExtremeCap);

/// Independence of the path indicators.
bool paths_independent(const Dag& g, const std::vector<Path>& paths);

}  // namespace rumid
