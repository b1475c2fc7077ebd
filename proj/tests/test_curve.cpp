#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nevanlab/curve.hpp"
#include "nevanlab/errors.hpp"
#include "nevanlab/exp_poly.hpp"

using namespace nevanlab;

namespace {

const ExpPolySum kZ = ExpPolySum::polynomial(UniPoly::identity());
ExpPolySum expo(Complex a, UniPoly p = UniPoly::constant(1.0)) {
  return ExpPolySum::exponential(UniPoly({0.0, a}), std::move(p));
}
ExpPolySum cst(Complex c) { return ExpPolySum::constant(c); }

ExpPolySum random_sum(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> nterms(1, 4), pdeg(0, 3), qdeg(1, 3);
  std::vector<ExpTerm> t;
  const int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> p(pdeg(rng) + 1), q(qdeg(rng) + 1);
    for (auto& c : p) c = Complex(u(rng), u(rng));
    for (auto& c : q) c = Complex(u(rng), u(rng)) * 0.5;
    q[0] = 0.0;
    t.push_back({UniPoly(p), UniPoly(q)});
  }
  return ExpPolySum(t);
}

}  // namespace

TEST(Evaluate, Examples) {
  EXPECT_LT(std::abs(evaluate(expo(1.0), Complex(0.0, std::numbers::pi)) + 1.0), 1e-12);
  EXPECT_EQ(evaluate(expo(1.0, UniPoly::identity()) + cst(1.0), 0.0), Complex(1.0));
  EXPECT_EQ(evaluate(expo(1.0) - expo(2.0), 0.0), Complex(0.0));
}

TEST(Evaluate, OverflowSignalsScaledPath) {
  EXPECT_THROW(evaluate(expo(1.0), 800.0), EvaluationOverflow);
  auto s = evaluate_scaled(expo(1.0), 800.0);
  EXPECT_NEAR(s.log_abs(), 800.0, 1e-9);
}

TEST(Canonical, ConstantExponentFoldsIntoAmplitude) {
  ExpPolySum h({ExpTerm{UniPoly::constant(1.0), UniPoly({std::log(3.0), 1.0})}});
  ASSERT_EQ(h.terms().size(), 1u);
  EXPECT_EQ(h.terms()[0].q.coeff(0), Complex(0.0));
  EXPECT_NEAR(std::abs(h.terms()[0].p.coeff(0) - 3.0), 0.0, 1e-14);
}

TEST(Canonical, Idempotent) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto h = random_sum(rng) * random_sum(rng) + random_sum(rng);
    ExpPolySum again(h.terms());
    EXPECT_EQ(again, h);
  }
}

TEST(Canonical, ExponentDegreeCap) {
  EXPECT_THROW(ExpPolySum::exponential(UniPoly::monomial(1.0, 4)), DegreeOverflow);
}

TEST(Derivative, Examples) {
  EXPECT_EQ(derivative(expo(2.0)), expo(2.0, UniPoly::constant(2.0)));
  EXPECT_EQ(derivative(ExpPolySum::polynomial(UniPoly({0.0, 0.0, 1.0}))),
            ExpPolySum::polynomial(UniPoly({0.0, 2.0})));
  EXPECT_EQ(derivative(expo(1.0, UniPoly::identity())), expo(1.0, UniPoly({1.0, 1.0})));
}

TEST(Derivative, MatchesCentralDifferences) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = random_sum(rng);
    auto dh = derivative(h);
    for (int k = 0; k < 20; ++k) {
      Complex z;
      do z = Complex(5 * u(rng), 5 * u(rng));
      while (std::abs(z) > 5.0);
      const double step = 1e-5;
      const Complex fd = (evaluate(h, z + step) - evaluate(h, z - step)) / (2 * step);
      const Complex ex = evaluate(dh, z);
      EXPECT_LT(std::abs(fd - ex), 1e-6 * (1.0 + std::abs(ex)));
    }
  }
}

TEST(Ratio, Examples) {
  auto c = ratio_is_constant(expo(1.0, UniPoly::constant(2.0)), expo(1.0));
  ASSERT_TRUE(c);
  EXPECT_NEAR(std::abs(*c - 2.0), 0.0, 1e-14);
  EXPECT_FALSE(ratio_is_constant(expo(1.0), expo(2.0)));
  auto c3 = ratio_is_constant(ExpPolySum::polynomial(UniPoly({3.0, 3.0})), ExpPolySum::polynomial(UniPoly({1.0, 1.0})));
  ASSERT_TRUE(c3);
  EXPECT_NEAR(std::abs(*c3 - 3.0), 0.0, 1e-14);
  EXPECT_THROW(ratio_is_constant(expo(1.0), ExpPolySum()), std::invalid_argument);
}

TEST(Ratio, Properties) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    auto h = random_sum(rng);
    auto self = ratio_is_constant(h, h);
    ASSERT_TRUE(self);
    EXPECT_NEAR(std::abs(*self - 1.0), 0.0, 1e-12);
    const Complex c(u(rng), u(rng));
    auto fwd = ratio_is_constant(c * h, h);
    ASSERT_TRUE(fwd);
    EXPECT_LT(std::abs(*fwd - c), 1e-10 * std::abs(c));
    auto back = ratio_is_constant(h, c * h);
    ASSERT_TRUE(back);
    EXPECT_LT(std::abs(*back - 1.0 / c), 1e-10 / std::abs(c));
    auto other = random_sum(rng);
    if (!ratio_is_constant(other, h)) {
      EXPECT_FALSE(ratio_is_constant(h, other));
    }
  }
}

TEST(Curve, LogMaxNorm) {
  ProjectiveCurve line({cst(1.0), kZ}, 20.0);
  EXPECT_NEAR(log_max_norm(line, 2.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(log_max_norm(line, 0.5), 0.0, 1e-15);
  ProjectiveCurve e({cst(1.0), expo(1.0)}, 20.0);
  EXPECT_NEAR(log_max_norm(e, 10.0), 10.0, 1e-9);
}

TEST(Curve, RejectsCommonZero) {
  EXPECT_THROW(ProjectiveCurve({kZ, kZ * expo(1.0)}, 5.0), std::invalid_argument);
  EXPECT_THROW(ProjectiveCurve({kZ - cst(1.0), expo(1.0) - cst(Complex(std::numbers::e))}, 5.0),
               std::invalid_argument);
  EXPECT_NO_THROW(ProjectiveCurve({kZ - cst(1.0), expo(1.0) - cst(1.0)}, 5.0));
  EXPECT_THROW(ProjectiveCurve({ExpPolySum(), ExpPolySum()}, 5.0), std::invalid_argument);
}

TEST(Curve, Predicates) {
  EXPECT_TRUE(ProjectiveCurve({cst(1.0), kZ}, 5.0).is_rational());
  EXPECT_FALSE(ProjectiveCurve({cst(1.0), expo(1.0)}, 5.0).is_rational());
  EXPECT_TRUE(ProjectiveCurve({expo(1.0), 2.0 * expo(1.0)}, 5.0).is_constant());
  EXPECT_FALSE(ProjectiveCurve({cst(1.0), kZ}, 5.0).is_constant());
}
