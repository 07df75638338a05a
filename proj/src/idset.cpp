#include "rumid/idset.hpp"

#include "rumid/error.hpp"

#include <set>

namespace rumid {

namespace {

std::set<Preference> support_set(const Universe& u, const BoundsQuery& q) {
  std::set<Preference> s;
  if (q.support) {
    if (q.support->empty()) throw InvalidInput("support restriction is empty");
    for (const auto& p : *q.support) {
      check_preference(u, p);
      s.insert(p);
    }
  } else {
    for (auto& p : u.preferences()) s.insert(std::move(p));
  }
  return s;
}

void check_query(const Universe& u, const BoundsQuery& q) {
  check_distribution(u, q.base);
  for (const auto& [p, w] : q.functional) check_preference(u, p);
}

Rational evaluate(const SignedMeasure& functional, const SignedMeasure& m) {
  Rational total = 0;
  for (const auto& [p, w] : m) {
    auto it = functional.find(p);
    if (it != functional.end()) total += it->second * w;
  }
  return total;
}

LpResult solve_or_throw(const LpProblem& p, LpSense sense) {
  LpResult r = lp_solve(p, sense);
  if (r.status == LpStatus::infeasible)
    throw InfeasibleRestriction("no distribution in the support restriction matches the data");
  if (r.status == LpStatus::unbounded) throw Error("identified set is unbounded, which cannot happen for distributions");
  return r;
}

}  // namespace

Bounds bounds(const RyserSpace& space, const BoundsQuery& q) {
  const Universe& u = space.universe();
  check_query(u, q);
  const std::set<Preference> s = support_set(u, q);
  const int d = space.dimension();
  std::vector<SignedMeasure> swaps;
  for (const auto& r : space.basis()) swaps.push_back(r.measure());

  // rows: one per preference that is touched by the base or by some swap
  struct Row {
    Preference p;
    bool slack;
  };
  std::vector<Row> rows;
  for (const auto& p : space.preferences()) {
    bool touched = q.base.count(p) && !q.base.at(p).is_zero();
    for (int i = 0; i < d && !touched; ++i) touched = swaps[static_cast<std::size_t>(i)].count(p) > 0;
    if (touched) rows.push_back({p, s.count(p) > 0});
  }
  Index slacks = 0;
  for (const auto& r : rows) slacks += r.slack;

  LpProblem lp;
  const Index vars = d + slacks;
  lp.objective = RatVector::Zero(vars);
  lp.a = RatMatrix::Zero(static_cast<Index>(rows.size()), vars);
  lp.b = RatVector::Zero(static_cast<Index>(rows.size()));
  lp.nonnegative.assign(static_cast<std::size_t>(vars), true);
  for (int i = 0; i < d; ++i) {
    lp.nonnegative[static_cast<std::size_t>(i)] = false;
    lp.objective(i) = evaluate(q.functional, swaps[static_cast<std::size_t>(i)]);
  }
  Index slack = d;
  for (Index r = 0; r < static_cast<Index>(rows.size()); ++r) {
    const Preference& p = rows[static_cast<std::size_t>(r)].p;
    for (int i = 0; i < d; ++i) {
      auto it = swaps[static_cast<std::size_t>(i)].find(p);
      if (it != swaps[static_cast<std::size_t>(i)].end()) lp.a(r, i) = it->second;
    }
    if (rows[static_cast<std::size_t>(r)].slack) lp.a(r, slack++) = -1;
    auto it = q.base.find(p);
    lp.b(r) = it == q.base.end() ? Rational(0) : Rational(-it->second);
  }

  const Rational constant = evaluate(q.functional, q.base);
  auto realize = [&](const LpResult& res) {
    SignedMeasure m = q.base;
    for (int i = 0; i < d; ++i)
      if (!res.solution(i).is_zero())
        for (const auto& [p, w] : swaps[static_cast<std::size_t>(i)]) m[p] += res.solution(i) * w;
    prune_zeros(m);
    return m;
  };
  const LpResult lo = solve_or_throw(lp, LpSense::minimize);
  const LpResult hi = solve_or_throw(lp, LpSense::maximize);
  return Bounds{constant + lo.optimum, constant + hi.optimum, realize(lo), realize(hi)};
}

Bounds bounds_simplex(const Universe& u, const BoundsQuery& q) {
  check_query(u, q);
  const std::set<Preference> s = support_set(u, q);
  const std::vector<Preference> vars(s.begin(), s.end());
  const ChoiceRule rho = phi(u, q.base);
  std::vector<std::pair<Menu, int>> rows;
  for (Menu m = 1; m <= u.full(); ++m)
    for (int x = 0; x < u.size(); ++x)
      if (m >> x & 1u) rows.emplace_back(m, x);

  LpProblem lp;
  const auto nv = static_cast<Index>(vars.size());
  lp.objective = RatVector::Zero(nv);
  lp.a = RatMatrix::Zero(static_cast<Index>(rows.size()), nv);
  lp.b = RatVector::Zero(static_cast<Index>(rows.size()));
  for (Index j = 0; j < nv; ++j) {
    auto it = q.functional.find(vars[static_cast<std::size_t>(j)]);
    if (it != q.functional.end()) lp.objective(j) = it->second;
  }
  for (Index r = 0; r < static_cast<Index>(rows.size()); ++r) {
    const auto [m, x] = rows[static_cast<std::size_t>(r)];
    for (Index j = 0; j < nv; ++j)
      if (best_in(vars[static_cast<std::size_t>(j)], m) == x) lp.a(r, j) = 1;
    lp.b(r) = rho.at(m, x);
  }
  auto realize = [&](const LpResult& res) {
    SignedMeasure m;
    for (Index j = 0; j < nv; ++j)
      if (!res.solution(j).is_zero()) m[vars[static_cast<std::size_t>(j)]] = res.solution(j);
    return m;
  };
  const LpResult lo = solve_or_throw(lp, LpSense::minimize);
  const LpResult hi = solve_or_throw(lp, LpSense::maximize);
  return Bounds{lo.optimum, hi.optimum, realize(lo), realize(hi)};
}

Bounds bounds(const Universe& u, const BoundsQuery& q, BoundsMethod method) {
  if (method == BoundsMethod::simplex) return bounds_simplex(u, q);
  return bounds(RyserSpace(u), q);
}

SignedMeasure rationalization_of(const RumGraph& g, const ChoiceRule& rho) {
  check_choice_rule(g.universe(), rho, g.universe().menus());
  Rationalization r = is_rationalizable(g, rho);
  if (!r.rationalizable) throw DomainError("choice rule is not rationalizable by a random utility model");
  return r.witness;
}

bool paths_independent(const Dag& g, const std::vector<Path>& paths) {
  SpanBasis span(g.edge_count());
  for (const auto& p : paths)
    if (!span.insert(indicator(g, p))) return false;
  return true;
}

bool is_extreme(const RumGraph& g, const SignedMeasure& mu, const std::vector<Preference>& s) {
  check_distribution(g.universe(), mu);
  const std::set<Preference> allowed(s.begin(), s.end());
  std::vector<Path> paths;
  for (const auto& [p, w] : mu) {
    if (w.is_zero()) continue;
    if (!allowed.count(p)) throw DomainError("support of the distribution leaves the restriction at " + g.universe().pref_key(p));
    paths.push_back(pref_to_path(g, p));
  }
  return paths_independent(g.dag(), paths);
}

bool is_identifying_support(const RumGraph& g, const std::vector<Preference>& s) {
  const std::set<Preference> uniq(s.begin(), s.end());
  std::vector<Path> paths;
  for (const auto& p : uniq) paths.push_back(pref_to_path(g, p));
  return paths_independent(g.dag(), paths);
}

std::vector<PathDecomposition> path_extreme_points(const Dag& g, const QuasiFlow& f, const std::vector<Path>& paths,
                                                   std::size_t cap) {
  if (auto v = validate_quasiflow(g, f)) throw InvalidInput("not a quasi-flow: " + v->message);
  const std::set<Path> uniq(paths.begin(), paths.end());
  if (uniq.size() > cap) throw CapExceeded("candidate paths", uniq.size(), cap);
  std::vector<Path> cand;
  for (const auto& p : uniq) {
    check_path(g, p);
    bool positive = true;
    for (int e : p) positive = positive && f(e) > 0;
    if (positive) cand.push_back(p);
  }
  std::vector<RatVector> ind;
  for (const auto& p : cand) ind.push_back(indicator(g, p));

  std::vector<PathDecomposition> out;
  bool zero_flow = true;
  for (Index e = 0; e < f.size(); ++e) zero_flow = zero_flow && f(e).is_zero();
  if (zero_flow) return {PathDecomposition{}};

  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t start, const SpanBasis& span) -> void {
    for (std::size_t j = start; j < cand.size(); ++j) {
      SpanBasis next = span;
      if (!next.insert(ind[j])) continue;
      chosen.push_back(j);
      if (next.contains(f)) {
        RatMatrix a(f.size(), static_cast<Index>(chosen.size()));
        for (std::size_t c = 0; c < chosen.size(); ++c) a.col(static_cast<Index>(c)) = ind[chosen[c]];
        const auto x = solve_exact(a, f);
        bool positive = x.has_value();
        for (Index c = 0; positive && c < x->size(); ++c) positive = (*x)(c) > 0;
        if (positive) {
          PathDecomposition pi;
          for (std::size_t c = 0; c < chosen.size(); ++c) pi[cand[chosen[c]]] = (*x)(static_cast<Index>(c));
          out.push_back(std::move(pi));
        }
      } else {
        self(self, j + 1, next);
      }
      chosen.pop_back();
    }
  };
  rec(rec, 0, SpanBasis(g.edge_count()));
  return out;
}

std::vector<SignedMeasure> extreme_points(const RumGraph& g, const ChoiceRule& rho, const std::vector<Preference>& s,
                                          std::size_t cap) {
  rationalization_of(g, rho);
  const QuasiFlow f = bm_flow(g, rho);
  std::vector<Path> paths;
  for (const auto& p : s) paths.push_back(pref_to_path(g, p));
  std::vector<SignedMeasure> out;
  for (const auto& pi : path_extreme_points(g.dag(), f, paths, cap)) out.push_back(decomposition_to_dist(g, pi));
  if (out.empty()) throw InfeasibleRestriction("no distribution in the support restriction matches the data");
  return out;
}

PathBounds path_bounds(const Dag& g, const QuasiFlow& f, const std::vector<Path>& paths,
                       const std::vector<Rational>& functional) {
  if (paths.size() != functional.size()) throw InvalidInput("functional length differs from the path list");
  if (auto v = validate_quasiflow(g, f)) throw InvalidInput("not a quasi-flow: " + v->message);
  LpProblem lp;
  const auto nv = static_cast<Index>(paths.size());
  lp.objective = RatVector::Zero(nv);
  lp.a = RatMatrix::Zero(g.edge_count(), nv);
  lp.b = f;
  for (Index j = 0; j < nv; ++j) {
    check_path(g, paths[static_cast<std::size_t>(j)]);
    lp.objective(j) = functional[static_cast<std::size_t>(j)];
    for (int e : paths[static_cast<std::size_t>(j)]) lp.a(e, j) = 1;
  }
  auto realize = [&](const LpResult& res) {
    PathDecomposition pi;
    for (Index j = 0; j < nv; ++j)
      if (!res.solution(j).is_zero()) pi[paths[static_cast<std::size_t>(j)]] += res.solution(j);
    return pi;
  };
  const LpResult lo = solve_or_throw(lp, LpSense::minimize);
  const LpResult hi = solve_or_throw(lp, LpSense::maximize);
  return PathBounds{lo.optimum, hi.optimum, realize(lo), realize(hi)};
}

}  // namespace rumid
