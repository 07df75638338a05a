#pragma once

#include "rumid/linalg.hpp"

#include <vector>

namespace rumid {

enum class LpSense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus s);

/// optimize objective . x  subject to  a x = b,  x_j >= 0 where nonnegative[j].
/// An empty `nonnegative` means every variable is nonnegative.
struct LpProblem {
  RatVector objective;
  RatMatrix a;
  RatVector b;
  std::vector<bool> nonnegative;

  void validate() const;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational optimum;   // meaningful only when optimal
  RatVector solution;  // a basic feasible solution attaining the optimum
};

/// Exact two-phase simplex on a dense tableau, Bland's rule throughout.
LpResult lp_solve(const LpProblem& p, LpSense sense);

}  // namespace rumid
