#include "rumid/error.hpp"
#include "rumid/idset.hpp"
#include "rumid/ordered.hpp"
#include "rumid/rum_graph.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace rumid;
using fixtures::abc;

namespace {

BoundsQuery voter_query(const Universe& u) {
  BoundsQuery q;
  q.functional = fixtures::measure(u, {{"abdc", "1"}});
  q.base = fixtures::voter_mu(u);
  return q;
}

AltOrder order_of(const Universe& u, const char* key) { return u.parse_preference(key); }

std::vector<Preference> support_of(const SignedMeasure& mu) {
  std::vector<Preference> s;
  for (const auto& [p, w] : mu)
    if (!w.is_zero()) s.push_back(p);
  return s;
}

}  // namespace

TEST(Bounds, VoterExampleBothMethods) {
  const Universe u = abc(4);
  for (BoundsMethod m : {BoundsMethod::ryser, BoundsMethod::simplex}) {
    const Bounds b = bounds(u, voter_query(u), m);
    EXPECT_EQ(b.min, Rational(1, 4));
    EXPECT_EQ(b.max, Rational(5, 8));
    SignedMeasure lo = b.argmin, hi = b.argmax;
    prune_zeros(lo);
    prune_zeros(hi);
    EXPECT_EQ(lo, fixtures::voter_low(u));
    EXPECT_EQ(hi, fixtures::voter_high(u));
  }
}

TEST(Bounds, MethodsAgreeOnRandomInstances) {
  fixtures::Rng rng(31);
  const Universe u = abc(4);
  const RyserSpace space(u);
  for (int trial = 0; trial < 40; ++trial) {
    BoundsQuery q;
    q.base = fixtures::random_distribution(rng, u.preferences(), 6);
    for (int i = 0; i < 3; ++i)
      q.functional[u.preferences()[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, 23))]] +=
          fixtures::uniform_int(rng, -2, 3);
    if (trial % 2 == 0) {
      auto s = support_of(q.base);
      for (int i = 0; i < 4; ++i) s.push_back(u.preferences()[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, 23))]);
      q.support = s;
    }
    const Bounds a = bounds(space, q), b = bounds_simplex(u, q);
    EXPECT_EQ(a.min, b.min);
    EXPECT_EQ(a.max, b.max);
    EXPECT_TRUE(obs_equiv(u, a.argmin, q.base));
    EXPECT_TRUE(obs_equiv(u, a.argmax, q.base));
    for (const auto& [p, w] : a.argmax) EXPECT_GE(w, 0);
  }
}

TEST(Bounds, InfeasibleSupportIsReported) {
  const Universe u = abc(4);
  BoundsQuery q = voter_query(u);
  q.support = fixtures::prefs(u, {"abcd", "badc"});
  EXPECT_THROW(bounds(u, q), InfeasibleRestriction);
  EXPECT_THROW(bounds(u, q, BoundsMethod::simplex), InfeasibleRestriction);
}

TEST(Bounds, SmallUniversesCollapse) {
  fixtures::Rng rng(37);
  for (int n = 1; n <= 3; ++n) {
    const Universe u = abc(n);
    for (int trial = 0; trial < 10; ++trial) {
      BoundsQuery q;
      q.base = fixtures::random_distribution(rng, u.preferences(), 4);
      for (const auto& p : u.preferences()) {
        q.functional = {{p, Rational(1)}};
        const Bounds b = bounds(u, q);
        EXPECT_EQ(b.min, b.max);
      }
    }
  }
}

TEST(Extreme, SupportTests) {
  const Universe u = abc(4);
  const RumGraph g(u);
  const auto s = fixtures::voter_support(u);
  EXPECT_FALSE(is_identifying_support(g, s));
  for (std::size_t drop = 0; drop < 4; ++drop) {
    auto sub = s;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
    EXPECT_TRUE(is_identifying_support(g, sub));
  }
  EXPECT_TRUE(is_identifying_support(g, fixtures::eu_support(u)));
  // agreement with the rank oracle on random supports
  fixtures::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto pool = u.preferences();
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(fixtures::uniform_int(rng, 1, 10)));
    EXPECT_EQ(is_identifying_support(g, pool), oracle::choice_vector_rank(4, pool) == pool.size());
  }
}

TEST(Extreme, VoterVertices) {
  const Universe u = abc(4);
  const RumGraph g(u);
  const auto s = fixtures::voter_support(u);
  EXPECT_FALSE(is_extreme(g, fixtures::voter_mu(u), s));
  EXPECT_TRUE(is_extreme(g, fixtures::voter_low(u), s));
  EXPECT_TRUE(is_extreme(g, fixtures::voter_high(u), s));
  EXPECT_THROW(is_extreme(g, fixtures::voter_mu(u), fixtures::prefs(u, {"abcd"})), DomainError);
  auto pts = extreme_points(g, phi(u, fixtures::voter_mu(u)), s);
  for (auto& p : pts) prune_zeros(p);
  std::sort(pts.begin(), pts.end());
  std::vector<SignedMeasure> want{fixtures::voter_low(u), fixtures::voter_high(u)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(pts, want);
}

TEST(Extreme, VerticesMatchLpOptimaOnRandomRules) {
  // every LP optimum over a generic functional is among the enumerated vertices
  fixtures::Rng rng(43);
  const Universe u = abc(4);
  const RumGraph g(u);
  for (int trial = 0; trial < 10; ++trial) {
    const SignedMeasure mu = fixtures::random_distribution(rng, u.preferences(), 5);
    auto s = support_of(mu);
    for (int i = 0; i < 3; ++i) s.push_back(u.preferences()[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, 23))]);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto pts = extreme_points(g, phi(u, mu), s);
    for (auto& p : pts) {
      prune_zeros(p);
      EXPECT_TRUE(obs_equiv(u, p, mu));
      EXPECT_TRUE(is_extreme(g, p, s));
    }
    BoundsQuery q;
    q.base = mu;
    q.support = s;
    for (const auto& p : s) q.functional[p] = fixtures::uniform_int(rng, -50, 50);
    const Bounds b = bounds_simplex(u, q);
    SignedMeasure lo = b.argmin;
    prune_zeros(lo);
    EXPECT_NE(std::find(pts.begin(), pts.end(), lo), pts.end());
  }
}

// ---------------------------------------------------------------------------

TEST(SwapProgressive, VoterGolden) {
  const Universe u = abc(4);
  const RumGraph g(u);
  SignedMeasure out = swap_progressive(g, phi(u, fixtures::voter_mu(u)), order_of(u, "abdc"));
  prune_zeros(out);
  EXPECT_EQ(out, fixtures::voter_high(u));
}

TEST(SwapProgressive, UniformGolden) {
  const Universe u = abc(4);
  const RumGraph g(u);
  const AltOrder o = order_of(u, "abcd");
  SignedMeasure out = swap_progressive(g, fixtures::uniform_rule(u), o);
  prune_zeros(out);
  SignedMeasure want;
  for (const char* k : {"abcd", "acbd", "adbc", "badc", "bcad", "bdac", "cadb", "cbda", "cdab", "dacb", "dbca", "dcba"})
    want[u.parse_preference(k)] = Rational(1, 12);
  EXPECT_EQ(out, want);
  EXPECT_EQ(phi(u, out), fixtures::uniform_rule(u));
  EXPECT_TRUE(is_swap_progressive(u, out, o));
}

TEST(SwapProgressive, RejectsNonRationalizableRules) {
  const Universe u = abc(3);
  ChoiceRule rho = fixtures::uniform_rule(u);
  rho.probs[u.full()] = {Rational(2, 3), Rational(1, 6), Rational(1, 6)};
  EXPECT_THROW(swap_progressive(RumGraph(u), rho, order_of(u, "abc")), DomainError);
}

TEST(SwapProgressive, OutputsAreProgressiveExtremeAndTieBreakInvariant) {
  fixtures::Rng rng(47);
  for (int n = 3; n <= 5; ++n) {
    const Universe u = abc(n);
    const RumGraph g(u);
    for (int trial = 0; trial < 15; ++trial) {
      const SignedMeasure mu = fixtures::random_distribution(rng, u.preferences(), 6);
      AltOrder o = u.preferences()[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, static_cast<int>(u.preferences().size()) - 1))];
      const ChoiceRule rho = phi(u, mu);
      SignedMeasure out = swap_progressive(g, rho, o);
      prune_zeros(out);
      EXPECT_EQ(phi(u, out), rho);
      EXPECT_TRUE(is_swap_progressive(u, out, o));
      EXPECT_TRUE(is_extreme(g, out, u.preferences()));
      if (out.size() <= 7) EXPECT_TRUE(oracle::swap_progressive_by_search(support_of(out), o));
      // a different tie-break among an alternative's edges changes nothing
      std::vector<int> tie(static_cast<std::size_t>(u.full()) + 1);
      std::iota(tie.begin(), tie.end(), 0);
      std::shuffle(tie.begin(), tie.end(), rng);
      SignedMeasure alt = decomposition_to_dist(g, swap_progressive(g.dag(), bm_flow(g, rho), lift_order(g, o, tie)));
      prune_zeros(alt);
      EXPECT_EQ(alt, out);
    }
  }
}

TEST(SwapProgressive, CheckerAgreesWithOrderingSearch) {
  const Universe u = abc(4);
  // a >= b >= d >= c: abcd wants to come after badc (a over b at k = 0) and
  // before it (c under d at k = 2)
  const SignedMeasure pair = fixtures::measure(u, {{"abcd", "1/2"}, {"badc", "1/2"}});
  EXPECT_FALSE(is_swap_progressive(u, pair, order_of(u, "abdc")));
  EXPECT_TRUE(is_swap_progressive(u, pair, order_of(u, "abcd")));
  fixtures::Rng rng(53);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const SignedMeasure mu = fixtures::random_distribution(rng, u.preferences(), static_cast<std::size_t>(fixtures::uniform_int(rng, 1, 5)));
    const AltOrder o = u.preferences()[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, 23))];
    const bool got = is_swap_progressive(u, mu, o);
    EXPECT_EQ(got, oracle::swap_progressive_by_search(support_of(mu), o));
    (got ? positives : negatives)++;
  }
  EXPECT_GT(positives, 20);
  EXPECT_GT(negatives, 20);
}

TEST(SingleCrossing, AgreesWithOrderingSearch) {
  const Universe u = abc(4);
  fixtures::Rng rng(59);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const SignedMeasure mu = fixtures::random_distribution(rng, u.preferences(), static_cast<std::size_t>(fixtures::uniform_int(rng, 1, 5)));
    const AltOrder o = u.preferences()[static_cast<std::size_t>(fixtures::uniform_int(rng, 0, 23))];
    const bool got = is_single_crossing(u, mu, o);
    EXPECT_EQ(got, oracle::single_crossing_by_search(support_of(mu), o));
    (got ? positives : negatives)++;
  }
  EXPECT_GT(positives, 10);
  EXPECT_GT(negatives, 10);
}

TEST(SwapProgressive, GenericDagRespectsEdgeOrder) {
  fixtures::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g = fixtures::random_dag(rng, fixtures::uniform_int(rng, 3, 6), fixtures::uniform_int(rng, 1, 5));
    PathDecomposition pi;
    for (int k = 0; k < 5; ++k) pi[fixtures::random_path(rng, g)] += Rational(fixtures::uniform_int(rng, 1, 4), 5);
    const QuasiFlow f = recompose(g, pi);
    std::vector<int> ranked(static_cast<std::size_t>(g.edge_count()));
    std::iota(ranked.begin(), ranked.end(), 0);
    std::shuffle(ranked.begin(), ranked.end(), rng);
    const EdgeOrder eo = EdgeOrder::from_ranking(ranked);
    const PathDecomposition out = swap_progressive(g, f, eo);
    EXPECT_EQ(recompose(g, out), f);
    EXPECT_TRUE(is_swap_progressive(g, out, eo));
  }
}
