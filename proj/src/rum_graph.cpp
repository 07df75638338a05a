#include "rumid/rum_graph.hpp"

#include "rumid/error.hpp"

#include <bit>

namespace rumid {

namespace {

Dag lattice(const Universe& u, std::vector<int>& lookup, std::vector<Menu>& menu, std::vector<int>& alt) {
  const int n = u.size();
  const Menu full = u.full();
  std::vector<std::string> labels;
  for (Menu m = 0; m <= full; ++m) labels.push_back(u.menu_key(m));
  std::vector<Edge> edges;
  lookup.assign(static_cast<std::size_t>(full + 1) * static_cast<std::size_t>(n), -1);
  long id = 0;
  for (Menu m = 1; m <= full; ++m) {
    for (int x = 0; x < n; ++x) {
      if (!(m >> x & 1u)) continue;
      lookup[static_cast<std::size_t>(m) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x)] = static_cast<int>(id);
      menu.push_back(m);
      alt.push_back(x);
      edges.push_back({id++, static_cast<int>(m), static_cast<int>(m & ~(Menu{1} << x))});
    }
  }
  return Dag(std::move(labels), std::move(edges));
}

}  // namespace

RumGraph::RumGraph(Universe u) : u_(std::move(u)), dag_(lattice(u_, lookup_, menu_, alt_)) {}

int RumGraph::edge_of(Menu a, int x) const {
  if (a > u_.full() || x < 0 || x >= u_.size() || !(a >> x & 1u)) throw InvalidInput("no such lattice edge");
  return lookup_[static_cast<std::size_t>(a) * static_cast<std::size_t>(u_.size()) + static_cast<std::size_t>(x)];
}

RumGraph build_rum_graph(const Universe& u) { return RumGraph(u); }

QuasiFlow bm_flow(const RumGraph& g, const ChoiceRule& rho) {
  const Universe& u = g.universe();
  for (Menu m = 1; m <= u.full(); ++m)
    if (!rho.probs.count(m)) throw InvalidInput("choice rule is missing menu " + u.menu_key(m));
  QuasiFlow f = QuasiFlow::Zero(g.dag().edge_count());
  for (int e = 0; e < g.dag().edge_count(); ++e) {
    const Menu a = g.menu_of(e);
    const int x = g.alt_of(e);
    const Menu rest = u.full() & ~a;
    Rational total = 0;
    // every superset B = a | s for s a submask of the complement
    for (Menu s = rest;; s = (s - 1) & rest) {
      const Rational& v = rho.at(a | s, x);
      if (std::popcount(s) % 2 == 0) total += v;
      else total -= v;
      if (s == 0) break;
    }
    f(e) = total;
  }
  return f;
}

Rationalization is_rationalizable(const RumGraph& g, const ChoiceRule& rho) {
  Rationalization out;
  const QuasiFlow f = bm_flow(g, rho);
  for (int e = 0; e < f.size(); ++e)
    if (f(e) < 0) out.negative.push_back({g.menu_of(e), g.alt_of(e), f(e)});
  if (!out.negative.empty()) return out;
  if (validate_quasiflow(g.dag(), f, true)) return out;
  out.rationalizable = true;
  out.witness = decomposition_to_dist(g, decompose_greedy(g.dag(), f));
  return out;
}

Path pref_to_path(const RumGraph& g, const Preference& p) {
  check_preference(g.universe(), p);
  Path path;
  Menu m = g.universe().full();
  for (int x : p) {
    path.push_back(g.edge_of(m, x));
    m &= ~(Menu{1} << x);
  }
  return path;
}

Preference path_to_pref(const RumGraph& g, const Path& p) {
  check_path(g.dag(), p);
  Preference out;
  for (int e : p) out.push_back(g.alt_of(e));
  return out;
}

PathDecomposition dist_to_decomposition(const RumGraph& g, const SignedMeasure& mu) {
  PathDecomposition pi;
  for (const auto& [p, w] : mu)
    if (!w.is_zero()) pi[pref_to_path(g, p)] += w;
  return pi;
}

SignedMeasure decomposition_to_dist(const RumGraph& g, const PathDecomposition& pi) {
  SignedMeasure mu;
  for (const auto& [p, w] : pi)
    if (!w.is_zero()) mu[path_to_pref(g, p)] += w;
  return mu;
}

RatVector pref_indicator(const RumGraph& g, const Preference& p) { return indicator(g.dag(), pref_to_path(g, p)); }

}  // namespace rumid
