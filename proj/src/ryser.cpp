#include "rumid/ryser.hpp"

#include "rumid/error.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace rumid {

SignedMeasure RyserSwap::measure() const {
  SignedMeasure m;
  m[plus_p] += 1;
  m[plus_q] += 1;
  m[minus_p] -= 1;
  m[minus_q] -= 1;
  prune_zeros(m);
  return m;
}

RyserSwap make_swap(const Preference& p, const Preference& q, int k) {
  auto [a, b] = conjugates(p, q, k);
  return RyserSwap{p, q, std::move(a), std::move(b), k};
}

namespace {

using PairKey = std::pair<Preference, Preference>;

PairKey sorted_pair(const Preference& a, const Preference& b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

}  // namespace

std::vector<RyserSwap> enumerate_swaps(const Universe& u, const SwapOptions& opt) {
  std::vector<Preference> pool;
  if (opt.support) {
    std::set<Preference> uniq;
    for (const auto& p : *opt.support) {
      check_preference(u, p);
      uniq.insert(p);
    }
    pool.assign(uniq.begin(), uniq.end());
  } else {
    if (u.size() >= 6 && !opt.allow_large) throw CapExceeded("swap enumeration over all preferences, |X|", static_cast<std::uint64_t>(u.size()), 5);
    pool = u.preferences();
  }
  const std::set<Preference> members(pool.begin(), pool.end());
  std::map<std::pair<PairKey, PairKey>, RyserSwap> classes;
  const int n = u.size();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const Preference& p = pool[i];
      const Preference& q = pool[j];
      for (int k = 1; k < n - 1; ++k) {  // k = 0, n-1, n only ever give zero
        if (!k_compatible(p, q, k)) continue;
        if (opt.nontrivial_only && !nontrivially_k_compatible(p, q, k)) continue;
        auto [a, b] = conjugates(p, q, k);
        const PairKey minus = sorted_pair(p, q);
        const PairKey plus = sorted_pair(a, b);
        if (minus == plus) continue;
        if (opt.closed_support && (!members.count(a) || !members.count(b))) continue;
        auto key = minus < plus ? std::pair{minus, plus} : std::pair{plus, minus};
        classes.try_emplace(std::move(key), RyserSwap{p, q, a, b, k});
      }
    }
  }
  std::vector<RyserSwap> out;
  out.reserve(classes.size());
  for (auto& [key, s] : classes) out.push_back(std::move(s));
  return out;
}

RyserSpace::RyserSpace(const Universe& u, bool allow_large)
    : u_(u), prefs_(u.preferences()), span_(static_cast<Index>(prefs_.size())) {
  for (std::size_t i = 0; i < prefs_.size(); ++i) index_.emplace(prefs_[i], static_cast<int>(i));
  SwapOptions opt;
  opt.allow_large = allow_large;
  for (auto& s : enumerate_swaps(u, opt))
    if (span_.insert(to_vector(s.measure()))) basis_.push_back(std::move(s));
}

int RyserSpace::pref_index(const Preference& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw InvalidInput("preference is not over this universe");
  return it->second;
}

RatVector RyserSpace::to_vector(const SignedMeasure& m) const {
  RatVector v = RatVector::Zero(static_cast<Index>(prefs_.size()));
  for (const auto& [p, w] : m) v(pref_index(p)) += w;
  return v;
}

SignedMeasure RyserSpace::from_vector(const RatVector& v) const {
  SignedMeasure m;
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) m[prefs_[static_cast<std::size_t>(i)]] = v(i);
  return m;
}

bool RyserSpace::contains(const SignedMeasure& m) const { return span_.contains(to_vector(m)); }

void apply_swaps(PathDecomposition& pi, const std::vector<WeightedPathSwap>& swaps) {
  for (const auto& [c, s] : swaps) {
    pi[s.minus1] -= c;
    pi[s.minus2] -= c;
    pi[s.plus1] += c;
    pi[s.plus2] += c;
  }
  for (auto it = pi.begin(); it != pi.end();) {
    if (it->second.is_zero()) it = pi.erase(it);
    else ++it;
  }
}

namespace {

bool same_prefix(const Path& q, const Path& p, std::size_t len) {
  return q.size() >= len && std::equal(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(len), q.begin());
}

void check_decomposition(const Dag& g, const PathDecomposition& pi) {
  for (const auto& [p, w] : pi) {
    check_path(g, p);
    if (w < 0) throw InvalidInput("path decomposition has negative mass");
  }
}

}  // namespace

std::vector<WeightedPathSwap> zipper_transform(const Dag& g, const PathDecomposition& from,
                                               const PathDecomposition& to) {
  check_decomposition(g, from);
  check_decomposition(g, to);
  if (recompose(g, from) != recompose(g, to)) throw DomainError("the two decompositions induce different flows");

  PathDecomposition cur = from;
  std::erase_if(cur, [](const auto& kv) { return kv.second.is_zero(); });
  std::vector<WeightedPathSwap> out;

  for (const auto& [target, w] : to) {
    if (w.is_zero()) continue;
    for (std::size_t depth = 0; depth < target.size(); ++depth) {
      const int e = target[depth];
      const int node = g.edge(e).tail;
      Rational agree = 0, su = 0, sv = 0;
      std::vector<std::pair<const Path*, Rational>> us, vs;
      for (const auto& [q, m] : cur) {
        if (same_prefix(q, target, depth + 1)) {
          agree += m;
          continue;
        }
        if (same_prefix(q, target, depth)) {
          us.emplace_back(&q, m);
          su += m;
          continue;
        }
        if (std::find(q.begin(), q.end(), e) != q.end()) {
          vs.emplace_back(&q, m);
          sv += m;
        }
      }
      const Rational need = w - agree;
      if (need <= 0) continue;
      if (su < need || sv < need) throw Error("zipper invariant broken; inputs are inconsistent");
      std::vector<WeightedPathSwap> batch;
      for (const auto& [u, mu] : us) {
        for (const auto& [v, mv] : vs) {
          const Rational c = mu / su * (mv / sv) * need;
          auto [p1, p2] = path_conjugates(g, *u, *v, node);
          batch.push_back({c, PathSwap{*u, *v, std::move(p1), std::move(p2), node}});
        }
      }
      apply_swaps(cur, batch);
      out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
    }
    auto it = cur.find(target);
    if (it == cur.end() || it->second < w) throw Error("zipper failed to cover a target path");
    it->second -= w;
    if (it->second.is_zero()) cur.erase(it);
  }
  if (!cur.empty()) throw Error("zipper left residual mass");
  return out;
}

std::vector<WeightedSwap> zipper_transform(const RumGraph& g, const SignedMeasure& from, const SignedMeasure& to) {
  const int n = g.universe().size();
  std::vector<WeightedSwap> out;
  for (const auto& [c, s] : zipper_transform(g.dag(), dist_to_decomposition(g, from), dist_to_decomposition(g, to))) {
    const int k = n - std::popcount(static_cast<Menu>(s.node));
    RyserSwap r = make_swap(path_to_pref(g, s.minus1), path_to_pref(g, s.minus2), k);
    out.push_back({c, std::move(r)});
  }
  return out;
}

SignedMeasure apply_swaps(const SignedMeasure& mu, const std::vector<WeightedSwap>& swaps) {
  SignedMeasure out = mu;
  for (const auto& [c, s] : swaps) {
    out[s.plus_p] += c;
    out[s.plus_q] += c;
    out[s.minus_p] -= c;
    out[s.minus_q] -= c;
  }
  prune_zeros(out);
  return out;
}

namespace {

std::uint64_t top_set(const Preference& p, int k) {
  std::uint64_t s = 0;
  for (int i = 0; i < k; ++i) s |= std::uint64_t{1} << p[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace

Rearrangement::Rearrangement(const Universe& u, std::vector<Preference> seq, std::vector<std::vector<int>> sigmas)
    : seq_(std::move(seq)), sigmas_(std::move(sigmas)) {
  if (seq_.empty()) throw InvalidInput("rearrangement of an empty sequence");
  for (const auto& p : seq_) check_preference(u, p);
  const int n = u.size();
  const std::size_t m = seq_.size();
  if (static_cast<int>(sigmas_.size()) != n)
    throw InvalidInput("expected " + std::to_string(n) + " level permutations, got " + std::to_string(sigmas_.size()));
  std::vector<Preference> cur = seq_;
  for (int k = 1; k <= n; ++k) {
    const auto& sigma = sigmas_[static_cast<std::size_t>(k - 1)];
    if (sigma.size() != m) throw InvalidInput("level " + std::to_string(k) + " permutation has the wrong length");
    std::vector<int> inverse(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
      const int t = sigma[i];
      if (t < 0 || static_cast<std::size_t>(t) >= m || inverse[static_cast<std::size_t>(t)] >= 0)
        throw InvalidInput("level " + std::to_string(k) + " is not a permutation");
      inverse[static_cast<std::size_t>(t)] = static_cast<int>(i);
      if (top_set(cur[i], k - 1) != top_set(cur[static_cast<std::size_t>(t)], k - 1))
        throw InvalidInput("level " + std::to_string(k) + " permutation moves position " + std::to_string(i + 1) +
                           " outside its compatibility block");
    }
    std::vector<Preference> next(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Preference& src = cur[static_cast<std::size_t>(inverse[i])];
      Preference p(cur[i].begin(), cur[i].begin() + (k - 1));
      p.insert(p.end(), src.begin() + (k - 1), src.end());
      next[i] = std::move(p);
    }
    cur = std::move(next);
  }
  result_ = std::move(cur);
}

std::vector<Preference> apply_rearrangement(const std::vector<Preference>& seq, const Rearrangement& r) {
  if (seq != r.sequence()) throw InvalidInput("rearrangement was validated against a different sequence");
  return r.result();
}

bool rearrangement_equivalent(const RumGraph& g, const std::vector<Preference>& a, const std::vector<Preference>& b) {
  if (a.size() != b.size()) throw InvalidInput("sequences have different lengths");
  RatVector fa = RatVector::Zero(g.dag().edge_count()), fb = fa;
  for (const auto& p : a) fa += pref_indicator(g, p);
  for (const auto& p : b) fb += pref_indicator(g, p);
  return fa == fb;
}

}  // namespace rumid
