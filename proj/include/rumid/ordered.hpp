#pragma once

#include "rumid/choice.hpp"
#include "rumid/dag.hpp"
#include "rumid/rum_graph.hpp"

#include <vector>

namespace rumid {

/// Descending alternative order (first = highest).
using AltOrder = std::vector<int>;

/// Linear order over the edges of a DAG.
struct EdgeOrder {
  std::vector<int> ranked;  // edges, highest first
  std::vector<int> rank;    // edge -> position in `ranked`

  static EdgeOrder from_ranking(std::vector<int> ranked);
};

void check_order(const Universe& u, const AltOrder& o);

/// Edges of higher alternatives rank above those of lower ones; within an
/// alternative, by menu key. `tie_break` (optional) replaces the menu-key
/// order with a caller-supplied rank per menu.
EdgeOrder lift_order(const RumGraph& g, const AltOrder& o);
EdgeOrder lift_order(const RumGraph& g, const AltOrder& o, const std::vector<int>& tie_break);

/// Greedy ordered decomposition: from the source always take the
/// highest-ranked edge with positive residual, remove the bottleneck.
PathDecomposition swap_progressive(const Dag& g, const QuasiFlow& f, const EdgeOrder& eo);
/// RUM instance; throws DomainError when rho is not rationalizable.
SignedMeasure swap_progressive(const RumGraph& g, const ChoiceRule& rho, const AltOrder& o);

/// Whether supp(pi) can be ordered so that, for any two paths through a
/// common node, the later one leaves on a weakly higher edge.
bool is_swap_progressive(const Dag& g, const PathDecomposition& pi, const EdgeOrder& eo);
bool is_swap_progressive(const Universe& u, const SignedMeasure& mu, const AltOrder& o);

/// Whether supp(mu) can be ordered so that agreement with o is monotone.
bool is_single_crossing(const Universe& u, const SignedMeasure& mu, const AltOrder& o);

/// Whether the relation `before[i]` (i must precede each listed j) is acyclic.
bool admits_linear_extension(const std::vector<std::vector<int>>& before);

}  // namespace rumid
