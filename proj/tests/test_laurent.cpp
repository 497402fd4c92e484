#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "maxface/errors.hpp"
#include "maxface/laurent.hpp"

using namespace maxface;

namespace {

const cplx I{0.0, 1.0};

LaurentPoly lp(std::map<int, cplx> c) { return LaurentPoly(std::move(c)); }

}  // namespace

// ============================================
// LaurentPoly evaluation and calculus
// ============================================

TEST(LaurentEval, SymmetricSumAtOne) {
  EXPECT_NEAR(std::abs(eval(lp({{1, 1.0}, {-1, 1.0}}), 1.0) - 2.0), 0.0, 1e-15);
}

TEST(LaurentEval, InverseSquareAtTwo) {
  EXPECT_NEAR(std::abs(eval(LaurentPoly::monomial(-2), 2.0) - 0.25), 0.0, 1e-15);
}

TEST(LaurentEval, NegativeInverseAtI) {
  // -1/i = i
  const cplx v = eval(LaurentPoly::monomial(-1, -1.0), I);
  EXPECT_NEAR(std::abs(v - (-1.0 / I)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v - I), 0.0, 1e-15);
}

TEST(LaurentEval, ZeroRejectedOnlyWithNegativePowers) {
  EXPECT_THROW(eval(LaurentPoly::monomial(-1), 0.0), DomainError);
  EXPECT_NEAR(std::abs(eval(lp({{0, 3.0}, {2, 1.0}}), 0.0) - 3.0), 0.0, 0.0);
}

TEST(LaurentEval, PrunesTinyCoefficients) {
  const auto p = lp({{0, 1.0}, {3, 1e-16}});
  EXPECT_EQ(p.max_exponent(), 0);
  EXPECT_TRUE(lp({{1, 1e-15}}).is_zero());
}

TEST(LaurentCalculus, DerivativeOfMonomials) {
  EXPECT_LT(coefficient_distance(differentiate(LaurentPoly::monomial(1)), LaurentPoly::constant(1.0)), 1e-15);
  EXPECT_LT(coefficient_distance(differentiate(LaurentPoly::monomial(-1)), LaurentPoly::monomial(-2, -1.0)),
            1e-15);
  EXPECT_LT(coefficient_distance(differentiate(lp({{2, 1.0}, {-3, 3.0}})), lp({{1, 2.0}, {-4, -9.0}})),
            1e-15);
}

TEST(LaurentCalculus, AntiderivativeOfMonomials) {
  auto a = antiderivative(LaurentPoly::monomial(-2));
  EXPECT_LT(coefficient_distance(a.poly_part, LaurentPoly::monomial(-1, -1.0)), 1e-15);
  EXPECT_EQ(a.log_coeff, cplx{});

  a = antiderivative(LaurentPoly::monomial(-1, -1.0));
  EXPECT_TRUE(a.poly_part.is_zero());
  EXPECT_EQ(a.log_coeff, cplx(-1.0));

  // (1 + z^-2)/2 -> (z - z^-1)/2
  a = antiderivative(lp({{0, 0.5}, {-2, 0.5}}));
  EXPECT_LT(coefficient_distance(a.poly_part, lp({{1, 0.5}, {-1, -0.5}})), 1e-15);
  EXPECT_EQ(a.log_coeff, cplx{});
}

TEST(LaurentCalculus, RealIncrementOfLogTerm) {
  // Re ∫_1^z -dw/w = -ln|z|
  const auto a = antiderivative(LaurentPoly::monomial(-1, -1.0));
  for (const cplx z : {cplx(2.0, 0.0), cplx(0.0, 0.5), cplx(-1.5, 1.0)}) {
    EXPECT_NEAR(a.real_increment(1.0, z), -std::log(std::abs(z)), 1e-14);
  }
}

TEST(LaurentCalculus, RealIncrementWithImaginaryResidueUsesPrincipalArg) {
  // Re ∫_1^z i dw/w = -arg z on the slit plane.
  const auto a = antiderivative(LaurentPoly::monomial(-1, I));
  EXPECT_NEAR(a.real_increment(1.0, I), -std::numbers::pi / 2, 1e-14);
  EXPECT_NEAR(a.real_increment(1.0, -I), std::numbers::pi / 2, 1e-14);
}

TEST(LaurentDivision, ExactAndInexact) {
  // (z^2 - 1) / (z - 1) = z + 1
  const auto q = divide_exact(lp({{2, 1.0}, {0, -1.0}}), lp({{1, 1.0}, {0, -1.0}}));
  ASSERT_TRUE(q);
  EXPECT_LT(coefficient_distance(*q, lp({{1, 1.0}, {0, 1.0}})), 1e-14);
  // z^-2 shift: (z^-1 - z^-3) / (1 - z^-1) = z^-1 + z^-2 after clearing powers
  const auto q2 = divide_exact(lp({{-1, 1.0}, {-3, -1.0}}), lp({{0, 1.0}, {-1, -1.0}}));
  ASSERT_TRUE(q2);
  EXPECT_LT(coefficient_distance(*q2 * lp({{0, 1.0}, {-1, -1.0}}), lp({{-1, 1.0}, {-3, -1.0}})), 1e-14);
  EXPECT_FALSE(divide_exact(lp({{2, 1.0}, {0, 1.0}}), lp({{1, 1.0}, {0, -1.0}})));
  EXPECT_THROW(divide_exact(LaurentPoly::constant(1.0), LaurentPoly{}), DomainError);
}

// ============================================
// Trigonometric and real polynomials
// ============================================

TEST(TrigToLaurent, CosineAndConstant) {
  EXPECT_LT(coefficient_distance(trig_to_laurent(TrigPoly::cos(1)), lp({{1, 0.5}, {-1, 0.5}})), 1e-15);
  EXPECT_LT(coefficient_distance(trig_to_laurent(TrigPoly::constant(1.0)), LaurentPoly::constant(1.0)), 1e-15);
}

TEST(TrigToLaurent, SinTimesCosIsHalfSinDoubleAngle) {
  const TrigPoly q = TrigPoly::sin(1) * TrigPoly::cos(1);
  // (z^2 - z^-2)/(4i)
  const auto expected = lp({{2, 1.0 / (4.0 * I)}, {-2, -1.0 / (4.0 * I)}});
  EXPECT_LT(coefficient_distance(trig_to_laurent(q), expected), 1e-15);
  EXPECT_NEAR(q.sin_coeffs().at(2), 0.5, 1e-15);
}

TEST(TrigPolyAlgebra, DerivativeAndDegree) {
  const TrigPoly q(1.0, {{2, 3.0}}, {{1, -1.0}});
  EXPECT_EQ(q.degree(), 2);
  const TrigPoly d = q.derivative();
  for (double t : {0.0, 0.3, 2.0}) {
    EXPECT_NEAR(d(t), -6.0 * std::sin(2 * t) - std::cos(t), 1e-14);
  }
}

TEST(TrigPolyAlgebra, FromLaurentInvertsTrigToLaurent) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const TrigPoly q = testgen::random_trig(rng, 5);
    const TrigPoly back = TrigPoly::from_laurent(trig_to_laurent(q));
    EXPECT_LT((back - q).max_abs_coeff(), 1e-14);
  }
}

TEST(RealPolyAlgebra, EvaluateDifferentiateMultiply) {
  const RealPoly p({1.0, -2.0, 3.0});
  EXPECT_DOUBLE_EQ(p(2.0), 1.0 - 4.0 + 12.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), -2.0 + 12.0);
  const RealPoly q = p * RealPoly::linear_factor(0.5);
  EXPECT_EQ(q.degree(), 3);
  EXPECT_NEAR(q(0.5), 0.0, 1e-15);
  const cplx z{0.3, -0.7};
  EXPECT_NEAR(std::abs(poly_to_laurent(p)(z) - (1.0 - 2.0 * z + 3.0 * z * z)), 0.0, 1e-15);
}

TEST(ParamFunctionMix, ConstantsPromoteAcrossFamilies) {
  const ParamFunction t = TrigPoly::cos(1);
  const ParamFunction c = RealPoly::constant(2.0);
  const ParamFunction s = t + c;
  ASSERT_TRUE(s.is_trig());
  EXPECT_NEAR(s(0.0), 3.0, 1e-15);
  const ParamFunction p = RealPoly({0.0, 1.0});
  EXPECT_THROW(t * p, UnsupportedError);
}

// ============================================
// Domains and sup-norms
// ============================================

TEST(SupNormTest, IdentityOnAnnulusPeaksAtOuterRim) {
  const auto s = sup_norm(LaurentPoly::monomial(1), Annulus{0.5, 2.0}, 64);
  EXPECT_NEAR(s.grid_estimate, 2.0, 1e-14);
  EXPECT_NEAR(s.coefficient_bound, 2.0, 1e-14);
}

TEST(SupNormTest, SymmetricSumAttainsTwoPointFive) {
  const auto s = sup_norm(lp({{1, 1.0}, {-1, 1.0}}), Annulus{0.5, 2.0}, 64);
  // |r e^{it} + e^{-it}/r| is largest at t = 0 on either rim: 2 + 1/2.
  EXPECT_NEAR(s.grid_estimate, 2.5, 1e-14);
  EXPECT_GE(s.coefficient_bound, s.grid_estimate);
}

TEST(SupNormTest, RejectsCoarseGrids) {
  EXPECT_THROW(sup_norm(LaurentPoly::monomial(1), Annulus{}, 16), std::invalid_argument);
}

TEST(SupNormTest, RectangleContainingOriginWithPoleIsUnbounded) {
  EXPECT_TRUE(std::isinf(coefficient_bound(LaurentPoly::monomial(-1), Rectangle{-1, 1, -1, 1})));
}

TEST(DomainTest, GridIncludesBothAnnulusRims) {
  const auto pts = grid_points(Annulus{0.5, 2.0}, 16, 8);
  ASSERT_EQ(pts.size(), 128u);
  EXPECT_NEAR(std::abs(pts.front()), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(pts.back()), 2.0, 1e-15);
  EXPECT_THROW(check_domain(Annulus{2.0, 1.0}), std::invalid_argument);
  EXPECT_TRUE(contains(Rectangle{0, 1, 0, 1}, cplx(1.0, 0.5)));
  EXPECT_FALSE(contains(Annulus{0.5, 2.0}, cplx(0.1, 0.0)));
}

// ============================================
// Properties
// ============================================

TEST(LaurentProperty, AntiderivativeDifferentiatesBack) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const LaurentPoly p = testgen::random_laurent(rng, -6, 6);
    const auto a = antiderivative(p);
    const LaurentPoly back = differentiate(a.poly_part) + LaurentPoly::monomial(-1, a.log_coeff);
    EXPECT_LT(coefficient_distance(back, p), 1e-12);
  }
}

TEST(LaurentProperty, TrigToLaurentMatchesOnUnitCircle) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const TrigPoly q = testgen::random_trig(rng, 6);
    const LaurentPoly p = trig_to_laurent(q);
    for (int i = 0; i < 256; ++i) {
      const double t = testgen::uniform(rng, 0.0, 2 * std::numbers::pi);
      EXPECT_NEAR(std::abs(p(std::polar(1.0, t)) - q(t)), 0.0, 1e-12);
    }
  }
}

TEST(LaurentProperty, GridEstimateNeverExceedsCoefficientBound) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const LaurentPoly p = testgen::random_laurent(rng, -4, 4);
    const Domain d = rep % 2 ? Domain(Annulus{0.5, 2.0}) : Domain(Rectangle{0.2, 1.5, -0.7, 0.4});
    const auto s = sup_norm(p, d, 64);
    EXPECT_LE(s.grid_estimate, s.coefficient_bound * (1 + 1e-14));
  }
}

TEST(LaurentProperty, ProductEvaluatesMultiplicatively) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const LaurentPoly p = testgen::random_laurent(rng, -3, 4);
    const LaurentPoly q = testgen::random_laurent(rng, -5, 2);
    const cplx z = std::polar(testgen::uniform(rng, 0.5, 2.0), testgen::uniform(rng, -3.0, 3.0));
    const cplx lhs = eval(p * q, z);
    const cplx rhs = eval(p, z) * eval(q, z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * (1 + std::abs(rhs)));
  }
}

TEST(LaurentProperty, TrigProductMatchesPointwiseProduct) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const TrigPoly a = testgen::random_trig(rng, 3);
    const TrigPoly b = testgen::random_trig(rng, 4);
    const TrigPoly ab = a * b;
    for (int i = 0; i < 16; ++i) {
      const double t = testgen::uniform(rng, -4.0, 4.0);
      EXPECT_NEAR(ab(t), a(t) * b(t), 1e-12);
    }
  }
}
