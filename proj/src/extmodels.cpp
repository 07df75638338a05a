#include "rumid/extmodels.hpp"

#include "rumid/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace rumid {

namespace {

template <typename T>
std::pair<T, T> sorted_pair(const T& a, const T& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

// Dedup key for 1{plus} - 1{minus} up to sign.
template <typename T>
auto swap_key(const T& m1, const T& m2, const T& p1, const T& p2) {
  auto minus = sorted_pair(m1, m2);
  auto plus = sorted_pair(p1, p2);
  return minus < plus ? std::pair{minus, plus} : std::pair{plus, minus};
}

template <typename T>
bool is_zero_swap(const T& m1, const T& m2, const T& p1, const T& p2) {
  return sorted_pair(m1, m2) == sorted_pair(p1, p2);
}

void product_enumerate(const std::vector<std::vector<int>>& choices, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == choices.size()) {
      out.push_back(cur);
      return;
    }
    for (int x : choices[i]) {
      cur.push_back(x);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

std::vector<int> members(Menu m, int n) {
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (m >> x & 1u) out.push_back(x);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

namespace {

Dag rc_chain(const Universe& u, const MenuCollection& sigma, std::vector<int>& layer, std::vector<int>& alt,
             std::map<std::pair<int, int>, int>& lookup) {
  if (sigma.empty()) throw InvalidInput("menu collection is empty");
  std::set<Menu> seen;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= sigma.size(); ++i) labels.push_back("L" + std::to_string(i));
  std::vector<Edge> edges;
  long id = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Menu m = sigma[i];
    if (m == 0 || (m & ~u.full()) != 0) throw InvalidInput("menu collection contains an invalid menu");
    if (!seen.insert(m).second) throw InvalidInput("menu collection repeats menu " + u.menu_key(m));
    for (int x : members(m, u.size())) {
      lookup[{static_cast<int>(i), x}] = static_cast<int>(id);
      layer.push_back(static_cast<int>(i));
      alt.push_back(x);
      edges.push_back({id++, static_cast<int>(i), static_cast<int>(i + 1)});
    }
  }
  return Dag(std::move(labels), std::move(edges));
}

}  // namespace

RcGraph::RcGraph(Universe u, MenuCollection sigma)
    : u_(std::move(u)), sigma_(std::move(sigma)), dag_(rc_chain(u_, sigma_, layer_, alt_, lookup_)) {}

int RcGraph::edge_of(int layer, int x) const {
  auto it = lookup_.find({layer, x});
  if (it == lookup_.end()) throw InvalidInput("alternative is not in the menu of that layer");
  return it->second;
}

RcGraph build_rc_graph(const Universe& u, const MenuCollection& sigma) { return RcGraph(u, sigma); }

Path rc_path(const RcGraph& g, const ChoiceFunction& c) {
  if (static_cast<int>(c.size()) != g.layers()) throw InvalidInput("choice function has the wrong length");
  Path p;
  for (int i = 0; i < g.layers(); ++i) p.push_back(g.edge_of(i, c[static_cast<std::size_t>(i)]));
  return p;
}

ChoiceFunction rc_function(const RcGraph& g, const Path& p) {
  check_path(g.dag(), p);
  ChoiceFunction c;
  for (int e : p) c.push_back(g.alt_of(e));
  return c;
}

ChoiceFunction rational_choice(const RcGraph& g, const Preference& p) {
  check_preference(g.universe(), p);
  ChoiceFunction c;
  for (Menu m : g.sigma()) c.push_back(best_in(p, m));
  return c;
}

std::optional<Preference> rc_preference(const RcGraph& g, const ChoiceFunction& c) {
  std::optional<Preference> found;
  for (const auto& p : g.universe().preferences()) {
    if (rational_choice(g, p) != c) continue;
    if (found) return std::nullopt;
    found = p;
  }
  return found;
}

QuasiFlow rc_flow(const RcGraph& g, const ChoiceRule& rho) {
  check_choice_rule(g.universe(), rho, g.sigma());
  QuasiFlow f = QuasiFlow::Zero(g.dag().edge_count());
  for (int e = 0; e < g.dag().edge_count(); ++e) f(e) = rho.at(g.sigma()[static_cast<std::size_t>(g.layer_of(e))], g.alt_of(e));
  return f;
}

ChoiceRule rc_phi(const RcGraph& g, const ChoiceMeasure& mu) {
  ChoiceRule rho;
  const auto n = static_cast<std::size_t>(g.universe().size());
  for (Menu m : g.sigma()) rho.probs.emplace(m, std::vector<Rational>(n, Rational(0)));
  for (const auto& [c, w] : mu) {
    rc_path(g, c);  // validates
    for (int i = 0; i < g.layers(); ++i)
      rho.probs[g.sigma()[static_cast<std::size_t>(i)]][static_cast<std::size_t>(c[static_cast<std::size_t>(i)])] += w;
  }
  return rho;
}

bool rc_obs_equiv(const RcGraph& g, const ChoiceMeasure& mu, const ChoiceMeasure& nu) {
  return rc_phi(g, mu) == rc_phi(g, nu);
}

namespace {

std::vector<ChoiceFunction> all_functions(const RcGraph& g, std::uint64_t cap) {
  const std::uint64_t count = count_paths(g.dag());
  if (count > cap) throw CapExceeded("choice functions", count, cap);
  std::vector<std::vector<int>> choices;
  for (Menu m : g.sigma()) choices.push_back(members(m, g.universe().size()));
  std::vector<ChoiceFunction> out;
  product_enumerate(choices, out);
  return out;
}

}  // namespace

std::vector<RcSwap> rc_swaps(const RcGraph& g, const std::optional<std::vector<ChoiceFunction>>& support,
                             std::uint64_t cap) {
  std::vector<ChoiceFunction> pool;
  if (support) {
    std::set<ChoiceFunction> uniq;
    for (const auto& c : *support) {
      rc_path(g, c);
      uniq.insert(c);
    }
    pool.assign(uniq.begin(), uniq.end());
  } else {
    pool = all_functions(g, cap);
  }
  using Key = std::pair<std::pair<ChoiceFunction, ChoiceFunction>, std::pair<ChoiceFunction, ChoiceFunction>>;
  std::map<Key, RcSwap> classes;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      for (int l = 0; l < g.layers(); ++l) {
        const auto& a = pool[i];
        const auto& b = pool[j];
        if (a[static_cast<std::size_t>(l)] == b[static_cast<std::size_t>(l)]) continue;
        ChoiceFunction pa = a, pb = b;
        std::swap(pa[static_cast<std::size_t>(l)], pb[static_cast<std::size_t>(l)]);
        if (is_zero_swap(a, b, pa, pb)) continue;
        classes.try_emplace(swap_key(a, b, pa, pb), RcSwap{a, b, pa, pb, l});
      }
  std::vector<RcSwap> out;
  for (auto& [k, s] : classes) out.push_back(std::move(s));
  return out;
}

bool rc_in_span(const RcGraph& g, const ChoiceMeasure& m, std::uint64_t cap) {
  const auto funcs = all_functions(g, cap);
  std::map<ChoiceFunction, Index> idx;
  for (std::size_t i = 0; i < funcs.size(); ++i) idx[funcs[i]] = static_cast<Index>(i);
  const auto dim = static_cast<Index>(funcs.size());
  SpanBasis span(dim);
  for (const auto& s : rc_swaps(g, std::nullopt, cap)) {
    RatVector v = RatVector::Zero(dim);
    v(idx.at(s.plus1)) += 1;
    v(idx.at(s.plus2)) += 1;
    v(idx.at(s.minus1)) -= 1;
    v(idx.at(s.minus2)) -= 1;
    span.insert(v);
  }
  RatVector v = RatVector::Zero(dim);
  for (const auto& [c, w] : m) {
    auto it = idx.find(c);
    if (it == idx.end()) throw InvalidInput("measure contains an invalid choice function");
    v(it->second) += w;
  }
  return span.contains(v);
}

EdgeOrder rc_lift_order(const RcGraph& g, const AltOrder& o) {
  check_order(g.universe(), o);
  std::vector<int> pos(static_cast<std::size_t>(g.universe().size()));
  for (std::size_t i = 0; i < o.size(); ++i) pos[static_cast<std::size_t>(o[i])] = static_cast<int>(i);
  std::vector<int> edges(static_cast<std::size_t>(g.dag().edge_count()));
  std::iota(edges.begin(), edges.end(), 0);
  std::sort(edges.begin(), edges.end(), [&](int a, int b) {
    const int pa = pos[static_cast<std::size_t>(g.alt_of(a))], pb = pos[static_cast<std::size_t>(g.alt_of(b))];
    if (pa != pb) return pa < pb;
    return g.layer_of(a) < g.layer_of(b);
  });
  return EdgeOrder::from_ranking(std::move(edges));
}

ChoiceMeasure rc_swap_progressive(const RcGraph& g, const ChoiceRule& rho, const AltOrder& o) {
  const PathDecomposition pi = swap_progressive(g.dag(), rc_flow(g, rho), rc_lift_order(g, o));
  ChoiceMeasure out;
  for (const auto& [p, w] : pi) out[rc_function(g, p)] += w;
  return out;
}

// ---------------------------------------------------------------------------

void check_ddc(const Universe& u, const DdcData& d) {
  const int n = u.size();
  if (d.horizon < 1) throw InvalidInput("horizon must be at least 1");
  if (static_cast<int>(d.rho1.size()) != n) throw InvalidInput("first-period probabilities have the wrong length");
  if (static_cast<int>(d.cond.size()) != d.horizon - 1)
    throw InvalidInput("expected " + std::to_string(d.horizon - 1) + " conditional tables");
  Rational total = 0;
  for (const auto& p : d.rho1) {
    if (p < 0 || p > 1) throw InvalidInput("first-period probability outside [0,1]");
    total += p;
  }
  if (total != 1) throw InvalidInput("first-period probabilities sum to " + format_rational(total));
  std::vector<Rational> reach = d.rho1;
  for (int t = 2; t <= d.horizon; ++t) {
    const RatMatrix& c = d.cond[static_cast<std::size_t>(t - 2)];
    if (c.rows() != n || c.cols() != n) throw InvalidInput("conditional table has the wrong shape");
    std::vector<Rational> next(static_cast<std::size_t>(n), Rational(0));
    for (int x = 0; x < n; ++x) {
      Rational row = 0;
      for (int y = 0; y < n; ++y) {
        if (c(x, y) < 0 || c(x, y) > 1) throw InvalidInput("conditional probability outside [0,1]");
        row += c(x, y);
      }
      const bool reached = reach[static_cast<std::size_t>(x)] > 0;
      if (reached && row != 1)
        throw InvalidInput("period " + std::to_string(t) + " row for " + u.label(x) + " sums to " + format_rational(row));
      if (!reached && !row.is_zero())
        throw InvalidInput("period " + std::to_string(t) + " row for unreached " + u.label(x) + " must be all zero");
      for (int y = 0; y < n; ++y) next[static_cast<std::size_t>(y)] += reach[static_cast<std::size_t>(x)] * c(x, y);
    }
    reach = std::move(next);
  }
}

DdcGraph::DdcGraph(Universe u, int horizon, MenuEvolution evolution)
    : u_(std::move(u)), horizon_(horizon), dag_({"s", "t"}, {{0, 0, 1}}) {
  if (horizon < 1) throw InvalidInput("horizon must be at least 1");
  const int n = u_.size();
  std::vector<std::string> labels{"s"};
  for (int t = 1; t <= horizon; ++t)
    for (int x = 0; x < n; ++x) labels.push_back(std::to_string(t) + ":" + u_.label(x));
  labels.push_back("t");
  const int sink = static_cast<int>(labels.size()) - 1;
  auto menu = [&](int t, int prev) { return evolution ? evolution(t, prev) : u_.full(); };
  std::vector<Edge> edges;
  long id = 0;
  for (int y : members(menu(1, -1), n)) {
    lookup_[{1, -1, y}] = static_cast<int>(id);
    edges.push_back({id++, 0, node(1, y)});
  }
  for (int t = 2; t <= horizon; ++t)
    for (int x = 0; x < n; ++x)
      for (int y : members(menu(t, x), n)) {
        lookup_[{t, x, y}] = static_cast<int>(id);
        edges.push_back({id++, node(t - 1, x), node(t, y)});
      }
  for (int x = 0; x < n; ++x) {
    lookup_[{horizon + 1, x, -1}] = static_cast<int>(id);
    edges.push_back({id++, node(horizon, x), sink});
  }
  dag_ = Dag(std::move(labels), std::move(edges));
}

int DdcGraph::source_edge(int x) const {
  auto it = lookup_.find({1, -1, x});
  if (it == lookup_.end()) throw InvalidInput("no first-period edge for that choice");
  return it->second;
}

int DdcGraph::step_edge(int t, int x, int y) const {
  auto it = lookup_.find({t, x, y});
  if (it == lookup_.end()) throw InvalidInput("no transition edge for that choice pair");
  return it->second;
}

int DdcGraph::sink_edge(int x) const {
  auto it = lookup_.find({horizon_ + 1, x, -1});
  if (it == lookup_.end()) throw InvalidInput("no terminal edge for that choice");
  return it->second;
}

DdcGraph build_ddc_graph(const Universe& u, int horizon) { return DdcGraph(u, horizon); }

QuasiFlow ddc_flow(const DdcGraph& g, const DdcData& d) {
  const Universe& u = g.universe();
  check_ddc(u, d);
  if (d.horizon != g.horizon()) throw InvalidInput("data horizon does not match the graph");
  const int n = u.size();
  QuasiFlow f = QuasiFlow::Zero(g.dag().edge_count());
  std::vector<Rational> inflow = d.rho1;
  for (int x = 0; x < n; ++x) f(g.source_edge(x)) = d.rho1[static_cast<std::size_t>(x)];
  for (int t = 2; t <= g.horizon(); ++t) {
    std::vector<Rational> next(static_cast<std::size_t>(n), Rational(0));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const Rational v = d.cond[static_cast<std::size_t>(t - 2)](x, y) * inflow[static_cast<std::size_t>(x)];
        f(g.step_edge(t, x, y)) = v;
        next[static_cast<std::size_t>(y)] += v;
      }
    inflow = std::move(next);
  }
  for (int x = 0; x < n; ++x) f(g.sink_edge(x)) = inflow[static_cast<std::size_t>(x)];
  return f;
}

Path ddc_path(const DdcGraph& g, const ChoiceSequence& s) {
  if (static_cast<int>(s.size()) != g.horizon()) throw InvalidInput("choice sequence has the wrong length");
  Path p{g.source_edge(s[0])};
  for (int t = 2; t <= g.horizon(); ++t)
    p.push_back(g.step_edge(t, s[static_cast<std::size_t>(t - 2)], s[static_cast<std::size_t>(t - 1)]));
  p.push_back(g.sink_edge(s.back()));
  return p;
}

ChoiceSequence ddc_sequence(const DdcGraph& g, const Path& p) {
  check_path(g.dag(), p);
  ChoiceSequence s;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) s.push_back((g.dag().edge(p[i]).head - 1) % g.universe().size());
  return s;
}

DdcData ddc_phi(const Universe& u, int horizon, const SequenceMeasure& mu) {
  const int n = u.size();
  DdcData d;
  d.horizon = horizon;
  d.rho1.assign(static_cast<std::size_t>(n), Rational(0));
  std::vector<RatMatrix> joint(static_cast<std::size_t>(std::max(0, horizon - 1)), RatMatrix::Zero(n, n));
  for (const auto& [s, w] : mu) {
    if (static_cast<int>(s.size()) != horizon) throw InvalidInput("choice sequence has the wrong length");
    for (int x : s)
      if (x < 0 || x >= n) throw InvalidInput("choice sequence contains an unknown alternative");
    d.rho1[static_cast<std::size_t>(s[0])] += w;
    for (int t = 2; t <= horizon; ++t)
      joint[static_cast<std::size_t>(t - 2)](s[static_cast<std::size_t>(t - 2)], s[static_cast<std::size_t>(t - 1)]) += w;
  }
  for (auto& j : joint) {
    RatMatrix c = RatMatrix::Zero(n, n);
    for (int x = 0; x < n; ++x) {
      Rational row = 0;
      for (int y = 0; y < n; ++y) row += j(x, y);
      if (row.is_zero()) continue;
      for (int y = 0; y < n; ++y) c(x, y) = j(x, y) / row;
    }
    d.cond.push_back(std::move(c));
  }
  return d;
}

bool ddc_obs_equiv(const Universe& u, int horizon, const SequenceMeasure& mu, const SequenceMeasure& nu) {
  const DdcData a = ddc_phi(u, horizon, mu), b = ddc_phi(u, horizon, nu);
  return a.rho1 == b.rho1 && a.cond == b.cond;
}

namespace {

std::vector<ChoiceSequence> all_sequences(const Universe& u, int horizon, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int t = 0; t < horizon; ++t) {
    count *= static_cast<std::uint64_t>(u.size());
    if (count > cap) throw CapExceeded("choice sequences", count, cap);
  }
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(horizon), members(u.full(), u.size()));
  std::vector<ChoiceSequence> out;
  product_enumerate(choices, out);
  return out;
}

}  // namespace

std::vector<DdcSwap> ddc_swaps(const Universe& u, int horizon, std::uint64_t cap) {
  const auto seqs = all_sequences(u, horizon, cap);
  using Key = std::pair<std::pair<ChoiceSequence, ChoiceSequence>, std::pair<ChoiceSequence, ChoiceSequence>>;
  std::map<Key, DdcSwap> classes;
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = i + 1; j < seqs.size(); ++j)
      for (int t = 2; t <= horizon; ++t) {
        const auto& a = seqs[i];
        const auto& b = seqs[j];
        const auto shared = static_cast<std::size_t>(t - 2);
        if (a[shared] != b[shared]) continue;
        const auto cut = static_cast<std::ptrdiff_t>(t - 1);
        ChoiceSequence pa(b.begin(), b.begin() + cut), pb(a.begin(), a.begin() + cut);
        pa.insert(pa.end(), a.begin() + cut, a.end());
        pb.insert(pb.end(), b.begin() + cut, b.end());
        if (is_zero_swap(a, b, pa, pb)) continue;
        classes.try_emplace(swap_key(a, b, pa, pb), DdcSwap{a, b, pa, pb, t});
      }
  std::vector<DdcSwap> out;
  for (auto& [k, s] : classes) out.push_back(std::move(s));
  return out;
}

bool ddc_in_span(const Universe& u, int horizon, const SequenceMeasure& m, std::uint64_t cap) {
  const auto seqs = all_sequences(u, horizon, cap);
  std::map<ChoiceSequence, Index> idx;
  for (std::size_t i = 0; i < seqs.size(); ++i) idx[seqs[i]] = static_cast<Index>(i);
  const auto dim = static_cast<Index>(seqs.size());
  SpanBasis span(dim);
  for (const auto& s : ddc_swaps(u, horizon, cap)) {
    RatVector v = RatVector::Zero(dim);
    v(idx.at(s.plus1)) += 1;
    v(idx.at(s.plus2)) += 1;
    v(idx.at(s.minus1)) -= 1;
    v(idx.at(s.minus2)) -= 1;
    span.insert(v);
  }
  RatVector v = RatVector::Zero(dim);
  for (const auto& [s, w] : m) {
    auto it = idx.find(s);
    if (it == idx.end()) throw InvalidInput("measure contains an invalid choice sequence");
    v(it->second) += w;
  }
  return span.contains(v);
}

// ---------------------------------------------------------------------------

std::string fd_key(const Universe& u, const TruncatedPreference& p) {
  return u.key(p.framed) + "|" + u.label(p.last);
}

TruncatedPreference parse_fd_key(const Universe& u, const std::string& key) {
  const auto bar = key.find('|');
  if (bar == std::string::npos) throw InvalidInput("truncated preference \"" + key + "\" lacks '|'");
  TruncatedPreference p;
  p.framed = key.substr(0, bar).empty() ? std::vector<int>{} : u.parse_sequence(key.substr(0, bar));
  p.last = u.index(key.substr(bar + 1));
  if (!is_truncated_preference(u, p)) throw InvalidInput("\"" + key + "\" is not a truncated preference");
  return p;
}

bool is_truncated_preference(const Universe& u, const TruncatedPreference& p) {
  if (p.framed.empty()) return false;
  std::set<int> seen;
  for (int x : p.framed)
    if (x < 0 || x >= u.size() || !seen.insert(x).second) return false;
  return seen.count(p.last) > 0;
}

FdModel::FdModel(Universe u) : u_(std::move(u)), dag_({"s", "t"}, {{0, 0, 1}}) {
  const int n = u_.size();
  const Menu full = u_.full();
  std::vector<std::string> labels;
  for (Menu m = 0; m <= full; ++m) labels.push_back("[" + u_.menu_key(m) + "]");
  labels.push_back("#");
  const int sink = static_cast<int>(labels.size()) - 1;
  std::vector<Edge> edges;
  long id = 0;
  for (Menu m = full + 1; m-- > 0;) {
    for (int x = 0; x < n; ++x) {
      if (m >> x & 1u) {
        lookup_[{static_cast<int>(m), x}] = static_cast<int>(id);
        edges.push_back({id++, static_cast<int>(m), static_cast<int>(m & ~(Menu{1} << x))});
      } else {
        lookup_[{static_cast<int>(m), n + x}] = static_cast<int>(id);
        edges.push_back({id++, static_cast<int>(m), sink});
      }
    }
  }
  dag_ = Dag(std::move(labels), std::move(edges));
  for (const auto& p : enumerate_paths(dag_)) prefs_.push_back(preference_of(p));
  std::sort(prefs_.begin(), prefs_.end());
}

Path FdModel::path_of(const TruncatedPreference& p) const {
  if (!is_truncated_preference(u_, p)) throw InvalidInput("not a truncated preference");
  const int n = u_.size();
  Path path;
  int m = static_cast<int>(u_.full());
  for (int x : p.framed) {
    path.push_back(lookup_.at({m, x}));
    m &= ~(1 << x);
  }
  path.push_back(lookup_.at({m, n + p.last}));
  return path;
}

TruncatedPreference FdModel::preference_of(const Path& path) const {
  check_path(dag_, path);
  TruncatedPreference p;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Edge& e = dag_.edge(path[i]);
    p.framed.push_back(std::countr_zero(static_cast<unsigned>(e.tail & ~e.head)));
  }
  const Edge& last = dag_.edge(path.back());
  const Menu remaining = static_cast<Menu>(last.tail);
  // exit edges out of a node are ordered by alternative among the absent ones
  int k = 0;
  for (int id : dag_.out_edges(last.tail)) {
    if (dag_.edge(id).head != dag_.sink()) continue;
    if (id == path.back()) break;
    ++k;
  }
  int count = 0;
  for (int x = 0; x < u_.size(); ++x) {
    if (remaining >> x & 1u) continue;
    if (count++ == k) {
      p.last = x;
      break;
    }
  }
  return p;
}

FdModel build_fd_model(const Universe& u) { return FdModel(u); }

int fd_choice(const TruncatedPreference& p, Menu recommended) {
  for (int x : p.framed)
    if (recommended >> x & 1u) return x;
  return p.last;
}

FdRule fd_phi(const Universe& u, const FdMeasure& mu) {
  FdRule rule;
  const auto n = static_cast<std::size_t>(u.size());
  for (Menu a = 0; a <= u.full(); ++a) rule.emplace(a, std::vector<Rational>(n, Rational(0)));
  for (const auto& [p, w] : mu) {
    if (!is_truncated_preference(u, p)) throw InvalidInput("measure contains an invalid truncated preference");
    for (auto& [a, row] : rule) row[static_cast<std::size_t>(fd_choice(p, a))] += w;
  }
  return rule;
}

bool fd_obs_equiv(const Universe& u, const FdMeasure& mu, const FdMeasure& nu) { return fd_phi(u, mu) == fd_phi(u, nu); }

std::vector<FdSwap> fd_swaps(const Universe& u) {
  const FdModel model(u);
  const auto& prefs = model.preferences();
  using Key = std::pair<std::pair<TruncatedPreference, TruncatedPreference>,
                        std::pair<TruncatedPreference, TruncatedPreference>>;
  std::map<Key, FdSwap> classes;
  for (std::size_t i = 0; i < prefs.size(); ++i)
    for (std::size_t j = i + 1; j < prefs.size(); ++j) {
      const auto& a = prefs[i];
      const auto& b = prefs[j];
      const std::size_t lim = std::min(a.framed.size(), b.framed.size());
      for (std::size_t k = 1; k <= lim; ++k) {
        std::set<int> sa(a.framed.begin(), a.framed.begin() + static_cast<std::ptrdiff_t>(k));
        std::set<int> sb(b.framed.begin(), b.framed.begin() + static_cast<std::ptrdiff_t>(k));
        if (sa != sb) continue;
        TruncatedPreference pa, pb;
        pa.framed.assign(a.framed.begin(), a.framed.begin() + static_cast<std::ptrdiff_t>(k));
        pa.framed.insert(pa.framed.end(), b.framed.begin() + static_cast<std::ptrdiff_t>(k), b.framed.end());
        pa.last = b.last;
        pb.framed.assign(b.framed.begin(), b.framed.begin() + static_cast<std::ptrdiff_t>(k));
        pb.framed.insert(pb.framed.end(), a.framed.begin() + static_cast<std::ptrdiff_t>(k), a.framed.end());
        pb.last = a.last;
        if (is_zero_swap(a, b, pa, pb)) continue;
        classes.try_emplace(swap_key(a, b, pa, pb), FdSwap{a, b, pa, pb, static_cast<int>(k)});
      }
    }
  std::vector<FdSwap> out;
  for (auto& [key, s] : classes) out.push_back(std::move(s));
  return out;
}

bool fd_in_span(const FdModel& model, const FdMeasure& m) {
  const auto& prefs = model.preferences();
  std::map<TruncatedPreference, Index> idx;
  for (std::size_t i = 0; i < prefs.size(); ++i) idx[prefs[i]] = static_cast<Index>(i);
  const auto dim = static_cast<Index>(prefs.size());
  SpanBasis span(dim);
  for (const auto& s : fd_swaps(model.universe())) {
    RatVector v = RatVector::Zero(dim);
    v(idx.at(s.plus1)) += 1;
    v(idx.at(s.plus2)) += 1;
    v(idx.at(s.minus1)) -= 1;
    v(idx.at(s.minus2)) -= 1;
    span.insert(v);
  }
  RatVector v = RatVector::Zero(dim);
  for (const auto& [p, w] : m) {
    auto it = idx.find(p);
    if (it == idx.end()) throw InvalidInput("measure contains an invalid truncated preference");
    v(it->second) += w;
  }
  return span.contains(v);
}

}  // namespace rumid
