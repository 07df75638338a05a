#pragma once

// Shared inputs for the unit and acceptance tests: the worked examples and
// random generators over small universes and DAGs.

#include "rumid/choice.hpp"
#include "rumid/dag.hpp"
#include "rumid/linalg.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace rumid;

inline Universe abc(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return Universe(labels, 8);
}

inline std::vector<Preference> prefs(const Universe& u, std::initializer_list<const char*> keys) {
  std::vector<Preference> out;
  for (const char* k : keys) out.push_back(u.parse_preference(k));
  return out;
}

inline SignedMeasure measure(const Universe& u, std::initializer_list<std::pair<const char*, const char*>> mass) {
  SignedMeasure mu;
  for (const auto& [k, w] : mass) mu[u.parse_preference(k)] = parse_rational(w);
  return mu;
}

// Four-alternative voter example.
inline std::vector<Preference> voter_support(const Universe& u) { return prefs(u, {"abcd", "badc", "abdc", "bacd"}); }
inline SignedMeasure voter_mu(const Universe& u) {
  return measure(u, {{"abcd", "1/4"}, {"badc", "1/4"}, {"abdc", "3/8"}, {"bacd", "1/8"}});
}
inline SignedMeasure voter_low(const Universe& u) { return measure(u, {{"abcd", "3/8"}, {"badc", "3/8"}, {"abdc", "1/4"}}); }
inline SignedMeasure voter_high(const Universe& u) { return measure(u, {{"abdc", "5/8"}, {"bacd", "3/8"}}); }

// Monotone expected-utility restriction over four lotteries.
inline std::vector<Preference> eu_support(const Universe& u) { return prefs(u, {"dcba", "dcab", "dbca", "cdab", "cadb"}); }

// Six-alternative pair of triples.
inline std::vector<Preference> six_left(const Universe& u) { return prefs(u, {"abcdef", "baefcd", "cdbafe"}); }
inline std::vector<Preference> six_right(const Universe& u) { return prefs(u, {"abefcd", "bacdfe", "cdbaef"}); }

/// Uniform choice on every menu.
inline ChoiceRule uniform_rule(const Universe& u) {
  ChoiceRule rho;
  for (Menu m : u.menus()) {
    std::vector<Rational> row(static_cast<std::size_t>(u.size()), Rational(0));
    const int k = std::popcount(m);
    for (int x = 0; x < u.size(); ++x)
      if (m >> x & 1u) row[static_cast<std::size_t>(x)] = Rational(1, k);
    rho.probs[m] = row;
  }
  return rho;
}

// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random probability vector with small denominators.
inline std::vector<Rational> random_simplex(Rng& rng, std::size_t n, int zero_percent = 0) {
  std::vector<Rational> w(n);
  Rational total = 0;
  for (auto& x : w) {
    x = uniform_int(rng, 0, 99) < zero_percent ? 0 : uniform_int(rng, 1, 9);
    total += x;
  }
  if (total == 0) {
    w[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1))] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return w;
}

/// Random distribution on a random support of the given size.
inline SignedMeasure random_distribution(Rng& rng, const std::vector<Preference>& pool, std::size_t support) {
  std::vector<Preference> chosen = pool;
  std::shuffle(chosen.begin(), chosen.end(), rng);
  chosen.resize(std::min(support, chosen.size()));
  const auto w = random_simplex(rng, chosen.size());
  SignedMeasure mu;
  for (std::size_t i = 0; i < chosen.size(); ++i) mu[chosen[i]] = w[i];
  return mu;
}

/// Layered random DAG on m nodes with unique source 0 and sink m-1. Node i
/// gets an edge from some earlier node and to some later node; extra edges
/// (parallel ones included) are sprinkled in.
inline Dag random_dag(Rng& rng, int m, int extra) {
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("n" + std::to_string(i));
  std::vector<Edge> edges;
  long id = 100;
  auto add = [&](int t, int h) { edges.push_back({id, t, h}); id += uniform_int(rng, 1, 3); };
  add(0, m - 1);
  for (int i = 1; i < m - 1; ++i) {
    add(uniform_int(rng, 0, i - 1), i);
    add(i, uniform_int(rng, i + 1, m - 1));
  }
  for (int k = 0; k < extra; ++k) {
    const int t = uniform_int(rng, 0, m - 2);
    add(t, uniform_int(rng, t + 1, m - 1));
  }
  std::shuffle(labels.begin() + 1, labels.end() - 1, rng);
  return Dag(labels, edges);
}

/// Random source-to-sink walk.
inline Path random_path(Rng& rng, const Dag& g) {
  Path p;
  int node = g.source();
  while (node != g.sink()) {
    const auto& outs = g.out_edges(node);
    const int e = outs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(outs.size()) - 1))];
    p.push_back(e);
    node = g.edge(e).head;
  }
  return p;
}

}  // namespace fixtures
