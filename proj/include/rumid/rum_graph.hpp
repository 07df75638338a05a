#pragma once

#include "rumid/choice.hpp"
#include "rumid/dag.hpp"

#include <optional>
#include <vector>

namespace rumid {

/// Menu lattice: node per subset (node index = bitmask), edge A -> A\{a}.
class RumGraph {
 public:
  explicit RumGraph(Universe u);

  const Universe& universe() const { return u_; }
  const Dag& dag() const { return dag_; }
  int edge_of(Menu a, int x) const;
  Menu menu_of(int edge) const { return menu_[static_cast<std::size_t>(edge)]; }
  int alt_of(int edge) const { return alt_[static_cast<std::size_t>(edge)]; }

 private:
  Universe u_;
  std::vector<int> lookup_;  // menu * n + x -> edge
  std::vector<Menu> menu_;
  std::vector<int> alt_;
  Dag dag_;  // last: built by filling the tables above
};

RumGraph build_rum_graph(const Universe& u);

/// Alternating-sum transform of rho on every edge; values may be negative.
QuasiFlow bm_flow(const RumGraph& g, const ChoiceRule& rho);

struct NegativeEdge {
  Menu menu;
  int alt;
  Rational value;
};

struct Rationalization {
  bool rationalizable = false;
  SignedMeasure witness;  // set when rationalizable
  std::vector<NegativeEdge> negative;
};

Rationalization is_rationalizable(const RumGraph& g, const ChoiceRule& rho);

Path pref_to_path(const RumGraph& g, const Preference& p);
Preference path_to_pref(const RumGraph& g, const Path& p);
PathDecomposition dist_to_decomposition(const RumGraph& g, const SignedMeasure& mu);
SignedMeasure decomposition_to_dist(const RumGraph& g, const PathDecomposition& pi);

/// Edge indicator of the preference's path.
RatVector pref_indicator(const RumGraph& g, const Preference& p);

}  // namespace rumid
