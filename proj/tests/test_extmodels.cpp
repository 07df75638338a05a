#include "rumid/error.hpp"
#include "rumid/extmodels.hpp"
#include "rumid/idset.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace rumid;
using fixtures::abc;

namespace {

ChoiceMeasure encode(const RcGraph& g, const SignedMeasure& mu) {
  ChoiceMeasure out;
  for (const auto& [p, w] : mu) out[rational_choice(g, p)] += w;
  return out;
}

std::vector<Path> rational_paths(const RcGraph& g) {
  std::vector<Path> out;
  for (const auto& p : g.universe().preferences()) out.push_back(rc_path(g, rational_choice(g, p)));
  return out;
}

template <class M>
M difference(const M& a, const M& b) {
  M out = a;
  for (const auto& [k, w] : b) out[k] -= w;
  return out;
}

template <class M>
void prune(M& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
}

// Moves mass along one swap as far as the minus terms allow.
template <class M, class S>
M push(const M& mu, const S& s, const Rational& share) {
  auto at = [&](const auto& k) { return mu.count(k) ? mu.at(k) : Rational(0); };
  const Rational room = std::min(at(s.minus1), at(s.minus2)) * share;
  M out = mu;
  out[s.minus1] -= room;
  out[s.minus2] -= room;
  out[s.plus1] += room;
  out[s.plus2] += room;
  prune(out);
  return out;
}

std::vector<ChoiceSequence> all_sequences(int n, int horizon) {
  std::vector<ChoiceSequence> out{{}};
  for (int t = 0; t < horizon; ++t) {
    std::vector<ChoiceSequence> next;
    for (const auto& s : out)
      for (int x = 0; x < n; ++x) {
        auto e = s;
        e.push_back(x);
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

template <class K>
std::map<K, Rational> random_measure(fixtures::Rng& rng, std::vector<K> pool, std::size_t support) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(support, pool.size()));
  const auto w = fixtures::random_simplex(rng, pool.size());
  std::map<K, Rational> mu;
  for (std::size_t i = 0; i < pool.size(); ++i) mu[pool[i]] = w[i];
  return mu;
}

// Random measure seeded with the minus terms of a random swap so that the
// swap can move positive mass.
template <class K, class S>
std::pair<std::map<K, Rational>, std::map<K, Rational>> equivalent_pair(fixtures::Rng& rng, const std::vector<K>& pool,
                                                                      const std::vector<S>& swaps, int steps) {
  std::map<K, Rational> mu = random_measure(rng, pool, 3);
  const auto& first = swaps[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, static_cast<int>(swaps.size()) - 1))];
  mu[first.minus1] += Rational(1, 3);
  mu[first.minus2] += Rational(1, 3);
  for (auto& [k, w] : mu) w /= Rational(5, 3);
  std::map<K, Rational> nu = push(mu, first, Rational(1, fixtures::uniform_int(rng, 1, 3)));
  for (int i = 1; i < steps; ++i)
    nu = push(nu, swaps[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, static_cast<int>(swaps.size()) - 1))], Rational(1, 2));
  return {mu, nu};
}

}  // namespace

// ---------------------------------------------------------------------------

TEST(RandomChoice, GraphShapeAndEncoding) {
  const Universe u = abc(3);
  const RcGraph g(u, u.menus());
  EXPECT_EQ(g.layers(), 7);
  int edges = 0;
  for (Menu m : u.menus()) edges += std::popcount(m);
  EXPECT_EQ(g.dag().edge_count(), edges);
  for (const auto& p : u.preferences()) {
    const ChoiceFunction c = rational_choice(g, p);
    EXPECT_EQ(rc_function(g, rc_path(g, c)), c);
    ASSERT_TRUE(rc_preference(g, c));
    EXPECT_EQ(*rc_preference(g, c), p);
  }
  // choosing b from {a,b} but a from {a,b,c} is not rational
  ChoiceFunction c = rational_choice(g, u.parse_preference("abc"));
  for (std::size_t i = 0; i < u.menus().size(); ++i)
    if (u.menus()[i] == 3u) c[i] = 1;
  EXPECT_FALSE(rc_preference(g, c));
  EXPECT_THROW(RcGraph(u, {}), InvalidInput);
  EXPECT_THROW(rc_path(g, ChoiceFunction(7, 2)), InvalidInput);
}

TEST(RandomChoice, FlowOfEncodedMeasureIsTheRule) {
  fixtures::Rng rng(71);
  const Universe u = abc(4);
  const RcGraph g(u, u.menus());
  for (int trial = 0; trial < 20; ++trial) {
    const SignedMeasure mu = fixtures::random_distribution(rng, u.preferences(), 5);
    const ChoiceMeasure enc = encode(g, mu);
    EXPECT_EQ(rc_phi(g, enc).probs, phi(u, mu).probs);
    PathDecomposition pi;
    for (const auto& [c, w] : enc) pi[rc_path(g, c)] += w;
    EXPECT_EQ(recompose(g.dag(), pi), rc_flow(g, phi(u, mu)));
  }
}

TEST(RandomChoice, VoterBoundsThroughRationalPaths) {
  const Universe u = abc(4);
  const RcGraph g(u, u.menus());
  const auto paths = rational_paths(g);
  std::vector<Rational> functional(paths.size(), Rational(0));
  const Path target = rc_path(g, rational_choice(g, u.parse_preference("abdc")));
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (paths[i] == target) functional[i] = 1;
  const PathBounds b = path_bounds(g.dag(), rc_flow(g, phi(u, fixtures::voter_mu(u))), paths, functional);
  EXPECT_EQ(b.min, Rational(1, 4));
  EXPECT_EQ(b.max, Rational(5, 8));
  auto decode = [&](const PathDecomposition& pi) {
    SignedMeasure out;
    for (const auto& [p, w] : pi)
      if (!w.is_zero()) out[*rc_preference(g, rc_function(g, p))] = w;
    return out;
  };
  EXPECT_EQ(decode(b.argmin), fixtures::voter_low(u));
  EXPECT_EQ(decode(b.argmax), fixtures::voter_high(u));
}

TEST(RandomChoice, VoterSwapProgressiveGolden) {
  const Universe u = abc(4);
  const RcGraph g(u, u.menus());
  ChoiceMeasure out = rc_swap_progressive(g, phi(u, fixtures::voter_mu(u)), u.parse_preference("abdc"));
  prune(out);
  EXPECT_EQ(out, encode(g, fixtures::voter_high(u)));
}

TEST(RandomChoice, UniformRuleDecomposesOverChoiceFunctions) {
  // the chain-graph greedy reproduces the rule exactly; whether its
  // support is made of rational choice functions is a separate question
  const Universe u = abc(4);
  const RcGraph g(u, u.menus());
  ChoiceMeasure out = rc_swap_progressive(g, fixtures::uniform_rule(u), u.parse_preference("abcd"));
  prune(out);
  EXPECT_EQ(rc_phi(g, out).probs, fixtures::uniform_rule(u).probs);
  Rational total = 0;
  for (const auto& [c, w] : out) {
    EXPECT_GT(w, 0);
    total += w;
  }
  EXPECT_EQ(total, 1);
  // Each layer is cut at its own quantiles (quarters, thirds, halves), so the
  // greedy has at most six atoms and cannot be the twelve-preference one.
  EXPECT_EQ(out.size(), 6u);
  int rational = 0;
  for (const auto& [c, w] : out) rational += rc_preference(g, c).has_value();
  EXPECT_LT(rational, 6);
}

TEST(RandomChoice, SpanMembershipMatchesEquivalence) {
  fixtures::Rng rng(73);
  const Universe u = abc(3);
  MenuCollection sigma;
  for (Menu m : u.menus())
    if (std::popcount(m) >= 2) sigma.push_back(m);
  const RcGraph g(u, sigma);
  std::vector<ChoiceFunction> pool;
  for (const auto& p : enumerate_paths(g.dag())) pool.push_back(rc_function(g, p));
  ASSERT_EQ(pool.size(), 24u);
  const auto swaps = rc_swaps(g);
  ASSERT_FALSE(swaps.empty());
  int equivalent = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ChoiceMeasure mu, nu;
    if (trial % 2 == 0) std::tie(mu, nu) = equivalent_pair(rng, pool, swaps, 3);
    else {
      mu = random_measure(rng, pool, 4);
      nu = random_measure(rng, pool, 4);
    }
    const bool eq = rc_obs_equiv(g, mu, nu);
    EXPECT_EQ(rc_in_span(g, difference(mu, nu)), eq);
    equivalent += eq;
  }
  EXPECT_GE(equivalent, 50);
}

// ---------------------------------------------------------------------------

TEST(DynamicChoice, GraphAndRoundTrip) {
  const Universe u = abc(3);
  const DdcGraph g(u, 3);
  EXPECT_EQ(g.dag().edge_count(), 3 + 9 * 2 + 3);
  for (const auto& s : all_sequences(3, 3)) EXPECT_EQ(ddc_sequence(g, ddc_path(g, s)), s);
  EXPECT_EQ(enumerate_paths(g.dag()).size(), 27u);
  EXPECT_THROW(DdcGraph(u, 0), InvalidInput);
}

TEST(DynamicChoice, FlowMatchesData) {
  fixtures::Rng rng(79);
  const Universe u = abc(3);
  const DdcGraph g(u, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const SequenceMeasure mu = random_measure(rng, all_sequences(3, 3), 6);
    PathDecomposition pi;
    for (const auto& [s, w] : mu) pi[ddc_path(g, s)] = w;
    const DdcData d = ddc_phi(u, 3, mu);
    EXPECT_NO_THROW(check_ddc(u, d));
    EXPECT_EQ(ddc_flow(g, d), recompose(g.dag(), pi));
  }
  DdcData bad = ddc_phi(u, 2, {{{0, 1}, Rational(1)}});
  bad.cond[0](0, 0) = Rational(1, 2);
  EXPECT_THROW(check_ddc(u, bad), InvalidInput);
}

TEST(DynamicChoice, TwoPeriodsAreIdentified) {
  fixtures::Rng rng(83);
  for (int n = 2; n <= 3; ++n) {
    const Universe u = abc(n);
    EXPECT_TRUE(ddc_swaps(u, 2).empty());
    const DdcGraph g(u, 2);
    const auto seqs = all_sequences(n, 2);
    std::vector<Path> paths;
    for (const auto& s : seqs) paths.push_back(ddc_path(g, s));
    for (int trial = 0; trial < 20; ++trial) {
      const SequenceMeasure mu = random_measure(rng, seqs, static_cast<std::size_t>(fixtures::uniform_int(rng, 1, n * n)));
      std::vector<Rational> functional(paths.size());
      for (auto& w : functional) w = fixtures::uniform_int(rng, -3, 3);
      const PathBounds b = path_bounds(g.dag(), ddc_flow(g, ddc_phi(u, 2, mu)), paths, functional);
      EXPECT_EQ(b.min, b.max);
      EXPECT_EQ(b.argmin, b.argmax);
    }
  }
}

TEST(DynamicChoice, ThreePeriodsMatchConditionalOracle) {
  fixtures::Rng rng(89);
  int equivalent = 0, total = 0;
  for (int n = 2; n <= 3; ++n) {
    const Universe u = abc(n);
    const auto seqs = all_sequences(n, 3);
    const auto swaps = ddc_swaps(u, 3);
    ASSERT_FALSE(swaps.empty());
    for (int trial = 0; trial < 80; ++trial) {
      SequenceMeasure mu, nu;
      if (trial % 2 == 0) std::tie(mu, nu) = equivalent_pair(rng, seqs, swaps, 2);
      else {
        mu = random_measure(rng, seqs, 4);
        nu = trial % 4 == 1 ? random_measure(rng, seqs, 4) : push(mu, swaps.front(), Rational(1));
      }
      const bool want = oracle::ddc_equiv(n, 3, mu, nu);
      EXPECT_EQ(ddc_obs_equiv(u, 3, mu, nu), want);
      EXPECT_EQ(ddc_in_span(u, 3, difference(mu, nu)), want);
      equivalent += want;
      ++total;
    }
  }
  EXPECT_GE(total, 100);
  EXPECT_GE(equivalent, 80);
}

// ---------------------------------------------------------------------------

TEST(FrameDependent, PreferenceCounts) {
  const std::size_t want[] = {1, 6, 33};
  for (int n = 1; n <= 3; ++n) {
    const FdModel m(abc(n));
    EXPECT_EQ(m.preferences().size(), want[n - 1]);
    EXPECT_EQ(enumerate_paths(m.dag()).size(), want[n - 1]);
    for (const auto& p : m.preferences()) {
      EXPECT_TRUE(is_truncated_preference(m.universe(), p));
      EXPECT_EQ(m.preference_of(m.path_of(p)), p);
      EXPECT_EQ(parse_fd_key(m.universe(), fd_key(m.universe(), p)), p);
    }
  }
  const Universe u = abc(3);
  EXPECT_FALSE(is_truncated_preference(u, {{0, 0}, 0}));
  EXPECT_FALSE(is_truncated_preference(u, {{0, 1}, 2}));
  EXPECT_FALSE(is_truncated_preference(u, {{}, 0}));
}

TEST(FrameDependent, ChoiceFollowsTheFramedList) {
  const Universe u = abc(3);
  const TruncatedPreference p{{1, 2}, 2};  // b then c framed, then c unframed
  EXPECT_EQ(fd_choice(p, 0b010), 1);
  EXPECT_EQ(fd_choice(p, 0b110), 1);
  EXPECT_EQ(fd_choice(p, 0b100), 2);
  EXPECT_EQ(fd_choice(p, 0b001), 2);
  EXPECT_EQ(fd_choice(p, 0), 2);
  const FdRule rho = fd_phi(u, {{p, Rational(1)}});
  EXPECT_EQ(rho.size(), 8u);
  for (const auto& [a, row] : rho) EXPECT_EQ(row[static_cast<std::size_t>(fd_choice(p, a))], 1);
}

TEST(FrameDependent, SpanMembershipMatchesEquivalence) {
  fixtures::Rng rng(97);
  const Universe u = abc(3);
  const FdModel model(u);
  const auto swaps = fd_swaps(u);
  ASSERT_FALSE(swaps.empty());
  int equivalent = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FdMeasure mu, nu;
    if (trial % 2 == 0) std::tie(mu, nu) = equivalent_pair(rng, model.preferences(), swaps, 3);
    else {
      mu = random_measure(rng, model.preferences(), 4);
      nu = random_measure(rng, model.preferences(), 4);
    }
    const bool eq = fd_obs_equiv(u, mu, nu);
    EXPECT_EQ(fd_in_span(model, difference(mu, nu)), eq);
    EXPECT_EQ(fd_phi(u, mu) == fd_phi(u, nu), eq);
    equivalent += eq;
  }
  EXPECT_GE(equivalent, 50);
  for (const auto& s : swaps) {
    FdMeasure z{{s.minus1, Rational(-1)}, {s.minus2, Rational(-1)}, {s.plus1, Rational(1)}, {s.plus2, Rational(1)}};
    FdMeasure zero;
    EXPECT_TRUE(fd_obs_equiv(u, z, zero));
  }
}
