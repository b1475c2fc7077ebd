#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "borel_oracle.hpp"
#include "nevanlab/borel.hpp"
#include "nevanlab/nevanlinna.hpp"

using namespace nevanlab;

namespace {

const ExpPolySum kZ = ExpPolySum::polynomial(UniPoly::identity());
ExpPolySum cst(Complex c) { return ExpPolySum::constant(c); }
ExpPolySum expo(Complex a, Complex c = 1.0) { return ExpPolySum::exponential(UniPoly({0.0, a}), UniPoly::constant(c)); }
HomogeneousPolynomial var(int nv, int i) { return HomogeneousPolynomial::variable(nv, i); }

PiMap fermat_pi(int nv, int d) {
  std::vector<HomogeneousPolynomial> q(nv, HomogeneousPolynomial::constant(nv, 1.0));
  return build_pi_map(q, std::vector<int>(nv, 0), d);
}

}  // namespace

TEST(PiMap, FermatComponents) {
  auto pi = fermat_pi(3, 7);
  ASSERT_EQ(pi.components.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(pi.components[i], pow(var(3, i), 7));
  EXPECT_FALSE(pi.below_threshold);
  EXPECT_TRUE(fermat_pi(3, 3).below_threshold);
}

TEST(PiMap, TheoremAComponents) {
  const int d = 19;
  const Complex a0 = 2.0, a1 = -3.0, a2 = 1.5, a3 = 0.5;
  auto z = [](int i) { return var(4, i); };
  std::vector<HomogeneousPolynomial> q{HomogeneousPolynomial::constant(4, 1.0), pow(z(1), 2) + a0 * pow(z(0), 2),
                                       pow(z(2), 2) + a1 * pow(z(0), 2),
                                       a2 * pow(z(1), 2) + a3 * pow(z(2), 2) + pow(z(3), 2)};
  auto pi = build_pi_map(q, {0, 2, 2, 2}, d);
  EXPECT_EQ(pi.components[0], pow(z(0), d));
  EXPECT_EQ(pi.components[1], pow(z(1), d) + a0 * (pow(z(1), d - 2) * pow(z(0), 2)));
  EXPECT_EQ(pi.components[3].coefficient({0, 0, 0, d}), Complex(1.0));
  EXPECT_EQ(pi.components[3].coefficient({0, 2, 0, d - 2}), a2);
  EXPECT_EQ(pi.divisor().degree(), d);
}

TEST(PiMap, DegreeMismatchThrows) {
  EXPECT_THROW(build_pi_map({var(2, 0), HomogeneousPolynomial::constant(2, 1.0)}, {0, 0}, 3), std::invalid_argument);
}

TEST(Pushforward, Examples) {
  ProjectiveCurve line({cst(1.0), kZ}, 10.0);
  auto g = pushforward(fermat_pi(2, 3), line);
  EXPECT_EQ(g.components()[0], cst(1.0));
  EXPECT_EQ(g.components()[1], ExpPolySum::polynomial(UniPoly::monomial(1.0, 3)));

  ProjectiveCurve ex({expo(1.0), expo(-1.0)}, 10.0);
  auto g2 = pushforward(fermat_pi(2, 2), ex);
  EXPECT_EQ(g2.components()[0], expo(2.0));
  EXPECT_EQ(g2.components()[1], expo(-2.0));
}

TEST(Pushforward, OrderScalesByDegree) {
  ProjectiveCurve f({cst(1.0), kZ, expo(1.0)}, 20.0);
  auto g = pushforward(fermat_pi(3, 4), f);
  auto grid = make_grid(2.0, 20.0, 6);
  auto tf = order_profile(f, grid);
  auto tg = order_profile(g, grid);
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lo = std::min(lo, tg[i] - 4 * tf[i]);
    hi = std::max(hi, tg[i] - 4 * tf[i]);
  }
  EXPECT_LT(hi - lo, 1e-6);
}

TEST(Partition, CanonicalFixtures) {
  {
    auto p = borel_partition({expo(1.0), expo(1.0, -1.0), cst(1.0), cst(-1.0)});
    ASSERT_EQ(p.classes.size(), 3u);
    EXPECT_TRUE(p.classes[0].empty());
    EXPECT_EQ(p.classes[1], (std::vector<int>{0, 1}));
    EXPECT_EQ(p.classes[2], (std::vector<int>{2, 3}));
    EXPECT_FALSE(p.exceptional_class);
  }
  {
    auto p = borel_partition({expo(1.0), expo(1.0, -1.0), cst(2.0), cst(-1.0)});
    ASSERT_TRUE(p.exceptional_class);
    EXPECT_EQ(p.classes[*p.exceptional_class], (std::vector<int>{2, 3}));
    EXPECT_NEAR(std::abs(p.class_sums[*p.exceptional_class] - 0.5), 0.0, 1e-14);
  }
  {
    auto p = borel_partition({expo(1.0), expo(2.0), kZ});
    ASSERT_EQ(p.classes.size(), 4u);
    for (int s = 1; s <= 3; ++s) EXPECT_EQ(p.classes[s].size(), 1u);
  }
}

TEST(Verify, CanonicalFixtures) {
  std::vector<ExpPolySum> a{expo(1.0), expo(1.0, -1.0), cst(2.0), cst(-1.0)};
  auto ra = verify_borel_conclusions(a, borel_partition(a), BorelCase::logarithmic, 5.0);
  EXPECT_TRUE(ra.all_clauses());
  EXPECT_EQ(ra.hypothesis, Hypothesis::certified_global);
  EXPECT_EQ(ra.sum, cst(1.0));

  std::vector<ExpPolySum> b{expo(1.0), expo(1.0, -1.0), cst(1.0), cst(-1.0)};
  auto rb = verify_borel_conclusions(b, borel_partition(b), BorelCase::compact, 5.0);
  EXPECT_TRUE(rb.all_clauses());
  EXPECT_EQ(rb.hypothesis, Hypothesis::certified_global);
  auto rb_log = verify_borel_conclusions(b, borel_partition(b), BorelCase::logarithmic, 5.0);
  EXPECT_FALSE(rb_log.clause_iv);
  EXPECT_EQ(rb_log.hypothesis, Hypothesis::failed);

  std::vector<ExpPolySum> c{expo(1.0), expo(2.0), kZ};
  auto rc = verify_borel_conclusions(c, borel_partition(c), BorelCase::logarithmic, 5.0);
  EXPECT_TRUE(rc.clause_i);
  EXPECT_FALSE(rc.clause_ii);
  EXPECT_TRUE(rc.clause_iii);
  EXPECT_FALSE(rc.clause_iv);
}

TEST(Verify, MismatchThrows) {
  std::vector<ExpPolySum> a{expo(1.0), cst(1.0)};
  BorelPartition bad;
  bad.classes = {{}, {0}};
  EXPECT_THROW(verify_borel_conclusions(a, bad, BorelCase::logarithmic, 5.0), std::invalid_argument);
}

TEST(Verify, NonvanishingSumCheckedToRadius) {
  // 3 + z vanishes only at -3.
  std::vector<ExpPolySum> g{cst(3.0), kZ};
  auto r = verify_borel_conclusions(g, borel_partition(g), BorelCase::logarithmic, 2.0);
  EXPECT_EQ(r.hypothesis, Hypothesis::verified_to_radius);
  auto r2 = verify_borel_conclusions(g, borel_partition(g), BorelCase::logarithmic, 4.0);
  EXPECT_EQ(r2.hypothesis, Hypothesis::failed);
}

TEST(Remark, WitnessSumIsPureExponential) {
  for (int d : {5, 19}) {
    auto w = build_remark_witness(d, 1.0, 2.0);
    auto g = pushforward(w.pi, w.curve);
    auto part = borel_partition(g.components());
    auto rep = verify_borel_conclusions(g.components(), part, BorelCase::logarithmic, w.curve.radius());
    EXPECT_EQ(rep.sum, ExpPolySum::exponential(UniPoly({0.0, static_cast<double>(d)})));
    EXPECT_EQ(rep.hypothesis, Hypothesis::certified_global);
    EXPECT_TRUE(rep.all_clauses());
    EXPECT_EQ(part.classes[0], (std::vector<int>{0}));
    // The curve avoids the divisor: D∘f never vanishes.
    EXPECT_EQ(compose_with_curve(w.pi.divisor(), w.curve), rep.sum);
  }
}

TEST(Span, Examples) {
  EXPECT_EQ(span_dimension({expo(1.0), expo(1.0, 2.0), kZ}, 12), 1);
  EXPECT_EQ(span_dimension({cst(1.0), kZ, ExpPolySum::polynomial(UniPoly::monomial(1.0, 2))}, 12), 2);
  EXPECT_THROW(span_dimension({cst(1.0), kZ}, 3), std::invalid_argument);
}


TEST(Partition, MatchesBruteForceOracle) {
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = oracle::random_tuple(rng);
    auto part = borel_partition(g);
    EXPECT_EQ(part.classes, oracle::borel_classes(g)) << "trial " << trial;
  }
}

TEST(Partition, SoundnessCompletenessAndRelationCount) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = oracle::random_tuple(rng);
    auto part = borel_partition(g);
    for (std::size_t s = 1; s < part.classes.size(); ++s) {
      for (int i : part.classes[s])
        for (int j : part.classes[s]) EXPECT_EQ(ratio_is_constant(g[i], g[j]), part.constants.at({i, j}));
      for (std::size_t t = s + 1; t < part.classes.size(); ++t)
        EXPECT_FALSE(ratio_is_constant(g[part.classes[s][0]], g[part.classes[t][0]]));
    }
    const int ell = static_cast<int>(part.classes.size()) - 1;
    const int relations = static_cast<int>(part.classes[0].size()) + [&] {
      int acc = 0;
      for (std::size_t s = 1; s < part.classes.size(); ++s) acc += static_cast<int>(part.classes[s].size()) - 1;
      return acc;
    }();
    EXPECT_EQ(relations, static_cast<int>(g.size()) - ell);
    const int dim = span_dimension(g, 4 * static_cast<int>(g.size()));
    EXPECT_LE(dim, ell - 1);
    // The pool functions times distinct amplitudes are independent.
    EXPECT_EQ(static_cast<int>(g.size()) - (dim + 1), relations);
  }
}

TEST(Corollary, LogarithmicAndCompactSpanBounds) {
  // Logarithmic fixtures with certified hypothesis.
  std::vector<std::vector<ExpPolySum>> log_cases{
      {expo(1.0), expo(1.0, -1.0), cst(2.0), cst(-1.0)},
      {expo(1.0), expo(1.0, -2.0), expo(1.0, 1.0), cst(1.0)},
  };
  for (const auto& g : log_cases) {
    auto rep = verify_borel_conclusions(g, borel_partition(g), BorelCase::logarithmic, 5.0);
    ASSERT_EQ(rep.hypothesis, Hypothesis::certified_global);
    const int n = static_cast<int>(g.size()) - 1;
    EXPECT_LE(span_dimension(g, 4 * (n + 1)), n / 2);
  }
  auto w = build_remark_witness(6, 1.0, 2.0);
  const auto g = pushforward(w.pi, w.curve).components();
  EXPECT_LE(span_dimension(g, 16), 3 / 2);

  std::vector<std::vector<ExpPolySum>> compact_cases{
      {expo(1.0), expo(1.0, -1.0), cst(1.0), cst(-1.0)},
      {kZ, -1.0 * kZ, expo(2.0), expo(2.0, -1.0), cst(0.0)},
  };
  for (const auto& g2 : compact_cases) {
    auto rep = verify_borel_conclusions(g2, borel_partition(g2), BorelCase::compact, 5.0);
    ASSERT_EQ(rep.hypothesis, Hypothesis::certified_global);
    const int n = static_cast<int>(g2.size()) - 1;
    EXPECT_LE(span_dimension(g2, 4 * (n + 1)), (n - 1) / 2);
  }
}
