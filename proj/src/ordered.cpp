#include "rumid/ordered.hpp"

#include "rumid/error.hpp"

#include <algorithm>
#include <numeric>

namespace rumid {

EdgeOrder EdgeOrder::from_ranking(std::vector<int> ranked) {
  EdgeOrder eo;
  eo.rank.assign(ranked.size(), -1);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const int e = ranked[i];
    if (e < 0 || static_cast<std::size_t>(e) >= ranked.size() || eo.rank[static_cast<std::size_t>(e)] >= 0)
      throw InvalidInput("edge order is not a permutation of the edges");
    eo.rank[static_cast<std::size_t>(e)] = static_cast<int>(i);
  }
  eo.ranked = std::move(ranked);
  return eo;
}

void check_order(const Universe& u, const AltOrder& o) {
  if (!is_preference(u, o)) throw InvalidInput("alternative order is not a permutation of the universe");
}

EdgeOrder lift_order(const RumGraph& g, const AltOrder& o, const std::vector<int>& tie_break) {
  const Universe& u = g.universe();
  check_order(u, o);
  if (tie_break.size() != static_cast<std::size_t>(u.full()) + 1) throw InvalidInput("tie-break needs one rank per menu");
  std::vector<int> pos(static_cast<std::size_t>(u.size()));
  for (std::size_t i = 0; i < o.size(); ++i) pos[static_cast<std::size_t>(o[i])] = static_cast<int>(i);
  std::vector<int> edges(static_cast<std::size_t>(g.dag().edge_count()));
  std::iota(edges.begin(), edges.end(), 0);
  std::sort(edges.begin(), edges.end(), [&](int a, int b) {
    const int pa = pos[static_cast<std::size_t>(g.alt_of(a))], pb = pos[static_cast<std::size_t>(g.alt_of(b))];
    if (pa != pb) return pa < pb;
    return tie_break[g.menu_of(a)] < tie_break[g.menu_of(b)];
  });
  return EdgeOrder::from_ranking(std::move(edges));
}

EdgeOrder lift_order(const RumGraph& g, const AltOrder& o) {
  const Universe& u = g.universe();
  std::vector<Menu> menus(static_cast<std::size_t>(u.full()) + 1);
  std::iota(menus.begin(), menus.end(), Menu{0});
  std::sort(menus.begin(), menus.end(), [&](Menu a, Menu b) { return u.menu_key(a) < u.menu_key(b); });
  std::vector<int> tie(menus.size());
  for (std::size_t i = 0; i < menus.size(); ++i) tie[menus[i]] = static_cast<int>(i);
  return lift_order(g, o, tie);
}

PathDecomposition swap_progressive(const Dag& g, const QuasiFlow& f, const EdgeOrder& eo) {
  if (static_cast<int>(eo.rank.size()) != g.edge_count()) throw InvalidInput("edge order does not match the graph");
  return decompose_by_priority(g, f, eo.rank);
}

SignedMeasure swap_progressive(const RumGraph& g, const ChoiceRule& rho, const AltOrder& o) {
  check_choice_rule(g.universe(), rho, g.universe().menus());
  const Rationalization r = is_rationalizable(g, rho);
  if (!r.rationalizable) throw DomainError("choice rule is not rationalizable by a random utility model");
  return decomposition_to_dist(g, swap_progressive(g.dag(), bm_flow(g, rho), lift_order(g, o)));
}

bool admits_linear_extension(const std::vector<std::vector<int>>& before) {
  const std::size_t n = before.size();
  std::vector<int> indeg(n, 0);
  for (const auto& outs : before)
    for (int j : outs) ++indeg[static_cast<std::size_t>(j)];
  std::vector<int> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  std::size_t done = 0;
  while (!ready.empty()) {
    const int i = ready.back();
    ready.pop_back();
    ++done;
    for (int j : before[static_cast<std::size_t>(i)])
      if (--indeg[static_cast<std::size_t>(j)] == 0) ready.push_back(j);
  }
  return done == n;
}

bool is_swap_progressive(const Dag& g, const PathDecomposition& pi, const EdgeOrder& eo) {
  if (static_cast<int>(eo.rank.size()) != g.edge_count()) throw InvalidInput("edge order does not match the graph");
  std::vector<const Path*> supp;
  for (const auto& [p, w] : pi) {
    check_path(g, p);
    if (!w.is_zero()) supp.push_back(&p);
  }
  // leaving edge of each path at each node it visits
  std::vector<std::vector<int>> leave(supp.size(), std::vector<int>(static_cast<std::size_t>(g.node_count()), -1));
  for (std::size_t i = 0; i < supp.size(); ++i)
    for (int e : *supp[i]) leave[i][static_cast<std::size_t>(g.edge(e).tail)] = e;
  std::vector<std::vector<int>> before(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      for (int node = 0; node < g.node_count(); ++node) {
        const int a = leave[i][static_cast<std::size_t>(node)], b = leave[j][static_cast<std::size_t>(node)];
        if (a < 0 || b < 0 || a == b) continue;
        // the path leaving on the higher edge comes later
        if (eo.rank[static_cast<std::size_t>(a)] < eo.rank[static_cast<std::size_t>(b)])
          before[j].push_back(static_cast<int>(i));
        else
          before[i].push_back(static_cast<int>(j));
      }
    }
  }
  return admits_linear_extension(before);
}

bool is_swap_progressive(const Universe& u, const SignedMeasure& mu, const AltOrder& o) {
  check_order(u, o);
  std::vector<int> pos(static_cast<std::size_t>(u.size()));
  for (std::size_t i = 0; i < o.size(); ++i) pos[static_cast<std::size_t>(o[i])] = static_cast<int>(i);
  std::vector<const Preference*> supp;
  for (const auto& [p, w] : mu) {
    check_preference(u, p);
    if (!w.is_zero()) supp.push_back(&p);
  }
  std::vector<std::vector<int>> before(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      const Preference& p = *supp[i];
      const Preference& q = *supp[j];
      for (int k = 0; k < u.size(); ++k) {
        if (!k_compatible(p, q, k)) continue;
        const int x = p[static_cast<std::size_t>(k)], y = q[static_cast<std::size_t>(k)];
        if (x == y) continue;
        if (pos[static_cast<std::size_t>(x)] < pos[static_cast<std::size_t>(y)]) before[j].push_back(static_cast<int>(i));
        else before[i].push_back(static_cast<int>(j));
      }
    }
  }
  return admits_linear_extension(before);
}

bool is_single_crossing(const Universe& u, const SignedMeasure& mu, const AltOrder& o) {
  check_order(u, o);
  std::vector<const Preference*> supp;
  for (const auto& [p, w] : mu) {
    check_preference(u, p);
    if (!w.is_zero()) supp.push_back(&p);
  }
  const auto n = static_cast<std::size_t>(u.size());
  auto ranks = [n](const Preference& p) {
    std::vector<int> r(n);
    for (std::size_t i = 0; i < n; ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
  };
  std::vector<std::vector<int>> rk;
  for (const auto* p : supp) rk.push_back(ranks(*p));
  std::vector<std::vector<int>> before(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = 0; j < supp.size(); ++j) {
      if (i == j) continue;
      // if some x above y in o has i: x over y but j: y over x, j precedes i
      bool forced = false;
      for (std::size_t a = 0; a < n && !forced; ++a)
        for (std::size_t b = a + 1; b < n && !forced; ++b) {
          const auto x = static_cast<std::size_t>(o[a]), y = static_cast<std::size_t>(o[b]);
          forced = rk[i][x] < rk[i][y] && rk[j][y] < rk[j][x];
        }
      if (forced) before[j].push_back(static_cast<int>(i));
    }
  }
  return admits_linear_extension(before);
}

}  // namespace rumid
