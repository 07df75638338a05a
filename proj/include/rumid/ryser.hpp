#pragma once

#include "rumid/choice.hpp"
#include "rumid/dag.hpp"
#include "rumid/rum_graph.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rumid {

/// 1{plus} - 1{minus}, where plus = conjugates(minus, k).
struct RyserSwap {
  Preference minus_p, minus_q;
  Preference plus_p, plus_q;
  int k = 0;

  SignedMeasure measure() const;
  bool operator==(const RyserSwap&) const = default;
};

/// Builds the swap for a k-compatible pair (throws otherwise).
RyserSwap make_swap(const Preference& p, const Preference& q, int k);

struct SwapOptions {
  bool nontrivial_only = false;
  /// Pairs are drawn from this set when given.
  std::optional<std::vector<Preference>> support;
  /// Also require both conjugates to lie in the support.
  bool closed_support = false;
  /// Needed to enumerate over every pair when |X| >= 6.
  bool allow_large = false;
};

/// Nonzero swaps, one per equivalence class under sign and pair order, in a
/// deterministic order.
std::vector<RyserSwap> enumerate_swaps(const Universe& u, const SwapOptions& opt = {});

/// Span of all swaps on a universe: an independent subset of swaps plus a
/// reduced row space for membership.
class RyserSpace {
 public:
  explicit RyserSpace(const Universe& u, bool allow_large = false);

  const Universe& universe() const { return u_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<RyserSwap>& basis() const { return basis_; }
  const std::vector<Preference>& preferences() const { return prefs_; }
  int pref_index(const Preference& p) const;
  RatVector to_vector(const SignedMeasure& m) const;
  SignedMeasure from_vector(const RatVector& v) const;
  bool contains(const SignedMeasure& m) const;

 private:
  Universe u_;
  std::vector<Preference> prefs_;
  std::map<Preference, int> index_;
  std::vector<RyserSwap> basis_;
  SpanBasis span_;
};

inline RyserSpace ryser_basis(const Universe& u, bool allow_large = false) { return RyserSpace(u, allow_large); }
inline bool in_ryser_span(const RyserSpace& r, const SignedMeasure& m) { return r.contains(m); }

/// A swap on paths of a generic DAG: 1{plus} - 1{minus}, conjugating at node.
struct PathSwap {
  Path minus1, minus2;
  Path plus1, plus2;
  int node = -1;
};

struct WeightedPathSwap {
  Rational coefficient;
  PathSwap swap;
};

void apply_swaps(PathDecomposition& pi, const std::vector<WeightedPathSwap>& swaps);

/// Positive-weight swaps turning `from` into `to`; every intermediate measure
/// stays a nonnegative decomposition of the same flow.
std::vector<WeightedPathSwap> zipper_transform(const Dag& g, const PathDecomposition& from,
                                               const PathDecomposition& to);

struct WeightedSwap {
  Rational coefficient;
  RyserSwap swap;
};

std::vector<WeightedSwap> zipper_transform(const RumGraph& g, const SignedMeasure& from, const SignedMeasure& to);
SignedMeasure apply_swaps(const SignedMeasure& mu, const std::vector<WeightedSwap>& swaps);

/// Level permutations sigma_1..sigma_|X| over sequence positions, in
/// one-line notation (sigma[k-1][i] is the image of position i). Level k
/// must permute only within positions whose current (k-1)-best sets agree.
class Rearrangement {
 public:
  Rearrangement(const Universe& u, std::vector<Preference> seq, std::vector<std::vector<int>> sigmas);

  const std::vector<Preference>& sequence() const { return seq_; }
  const std::vector<std::vector<int>>& sigmas() const { return sigmas_; }
  const std::vector<Preference>& result() const { return result_; }

 private:
  std::vector<Preference> seq_;
  std::vector<std::vector<int>> sigmas_;
  std::vector<Preference> result_;
};

std::vector<Preference> apply_rearrangement(const std::vector<Preference>& seq, const Rearrangement& r);

/// Equal summed edge masses on the menu lattice.
bool rearrangement_equivalent(const RumGraph& g, const std::vector<Preference>& a, const std::vector<Preference>& b);

}  // namespace rumid
