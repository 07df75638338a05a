#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// calls into the library's own algorithms; everything works directly from
// definitions over explicit permutations and subsets.

#include "rumid/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using rumid::Rational;
using Pref = std::vector<int>;
using Measure = std::map<Pref, Rational>;

inline std::vector<Pref> permutations(int n) {
  Pref p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Pref> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int top_in(const Pref& p, unsigned mask) {
  for (int x : p)
    if (mask >> x & 1u) return x;
  return -1;
}

/// (menu, alternative) -> choice probability, for every nonempty menu.
inline std::map<std::pair<unsigned, int>, Rational> phi(int n, const Measure& mu) {
  std::map<std::pair<unsigned, int>, Rational> out;
  for (unsigned m = 1; m < (1u << n); ++m)
    for (int x = 0; x < n; ++x)
      if (m >> x & 1u) out[{m, x}] = 0;
  for (const auto& [p, w] : mu)
    for (unsigned m = 1; m < (1u << n); ++m) out[{m, top_in(p, m)}] += w;
  return out;
}

inline bool equiv(int n, const Measure& a, const Measure& b) { return phi(n, a) == phi(n, b); }

/// Plain Gaussian elimination on a copy.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// n! minus the rank of the linear map from preference weights to choice
/// probabilities: the dimension of its kernel.
inline std::size_t kernel_dimension(int n) {
  const auto prefs = permutations(n);
  std::vector<std::vector<Rational>> rows;
  for (unsigned m = 1; m < (1u << n); ++m)
    for (int x = 0; x < n; ++x) {
      if (!(m >> x & 1u)) continue;
      std::vector<Rational> row;
      for (const auto& p : prefs) row.push_back(top_in(p, m) == x ? 1 : 0);
      rows.push_back(std::move(row));
    }
  return prefs.size() - rank(rows);
}

/// Rank of a set of 0/1 choice vectors: the preferences' choices on every menu.
inline std::size_t choice_vector_rank(int n, const std::vector<Pref>& s) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : s) {
    std::vector<Rational> row;
    for (unsigned m = 1; m < (1u << n); ++m)
      for (int x = 0; x < n; ++x)
        if (m >> x & 1u) row.push_back(top_in(p, m) == x ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rank(rows);
}

inline bool same_top_set(const Pref& p, const Pref& q, int k) {
  std::vector<int> a(p.begin(), p.begin() + k), b(q.begin(), q.begin() + k);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Searches every ordering of the support for one satisfying the definition:
/// whenever two preferences share their k-best set but differ at position
/// k+1, the one whose (k+1)-th alternative is higher in `order` comes later.
inline bool swap_progressive_by_search(const std::vector<Pref>& support, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  std::vector<int> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < idx.size() && ok; ++a)
      for (std::size_t b = a + 1; b < idx.size() && ok; ++b) {
        const Pref& early = support[static_cast<std::size_t>(idx[a])];
        const Pref& late = support[static_cast<std::size_t>(idx[b])];
        for (int k = 0; k < n && ok; ++k) {
          if (!same_top_set(early, late, k)) continue;
          const int x = early[static_cast<std::size_t>(k)], y = late[static_cast<std::size_t>(k)];
          if (x != y && pos[static_cast<std::size_t>(y)] > pos[static_cast<std::size_t>(x)]) ok = false;
        }
      }
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

/// Ordering search for single crossing: along the sequence, once a
/// preference agrees with `order` on a pair, every later one does too.
inline bool single_crossing_by_search(const std::vector<Pref>& support, const std::vector<int>& order) {
  const std::size_t n = order.size();
  auto above = [](const Pref& p, int x, int y) {
    return std::find(p.begin(), p.end(), x) < std::find(p.begin(), p.end(), y);
  };
  std::vector<int> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b) {
        const int x = order[a], y = order[b];
        bool agreed = false;
        for (int i : idx) {
          const bool agrees = above(support[static_cast<std::size_t>(i)], x, y);
          if (agrees) agreed = true;
          else if (agreed) ok = false;
        }
      }
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

// Dynamic choice: compares first-period probabilities and every period's
// conditional probabilities rho_t(y | x), defined as zero when x has zero
// probability at t-1.
using Seq = std::vector<int>;
inline bool ddc_equiv(int n, int horizon, const std::map<Seq, Rational>& a, const std::map<Seq, Rational>& b) {
  auto tables = [&](const std::map<Seq, Rational>& mu) {
    std::vector<std::vector<Rational>> out;  // [0] = first period, then flattened conditionals
    std::vector<Rational> first(static_cast<std::size_t>(n), Rational(0));
    for (const auto& [s, w] : mu) first[static_cast<std::size_t>(s[0])] += w;
    out.push_back(first);
    for (int t = 1; t < horizon; ++t) {
      std::vector<Rational> joint(static_cast<std::size_t>(n * n), Rational(0)), marg(static_cast<std::size_t>(n), Rational(0));
      for (const auto& [s, w] : mu) {
        joint[static_cast<std::size_t>(s[static_cast<std::size_t>(t - 1)] * n + s[static_cast<std::size_t>(t)])] += w;
        marg[static_cast<std::size_t>(s[static_cast<std::size_t>(t - 1)])] += w;
      }
      std::vector<Rational> cond(static_cast<std::size_t>(n * n), Rational(0));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (marg[static_cast<std::size_t>(x)] != 0)
            cond[static_cast<std::size_t>(x * n + y)] = joint[static_cast<std::size_t>(x * n + y)] / marg[static_cast<std::size_t>(x)];
      out.push_back(cond);
    }
    return out;
  };
  return tables(a) == tables(b);
}

}  // namespace oracle
