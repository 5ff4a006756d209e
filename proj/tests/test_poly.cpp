#include <gtest/gtest.h>

#include "froblift/error.hpp"
#include "froblift/poly.hpp"
#include "support.hpp"

namespace froblift {
namespace {

using testing::cst;
using testing::mono;
using testing::var;

TEST(Monomial, OrderAndArithmetic) {
  // degrevlex: x^2 > xy > y^2 > x > y > 1, and x y^2 z^0 vs x^2 z: compare last variable first.
  const Monomial x2{2, 0}, xy{1, 1}, y2{0, 2}, x{1, 0}, y{0, 1}, one{0, 0};
  EXPECT_GT(degrevlex_compare(x2, xy), 0);
  EXPECT_GT(degrevlex_compare(xy, y2), 0);
  EXPECT_GT(degrevlex_compare(y2, x), 0);
  EXPECT_GT(degrevlex_compare(x, y), 0);
  EXPECT_GT(degrevlex_compare(y, one), 0);
  EXPECT_GT(degrevlex_compare(Monomial{1, 2, 0}, Monomial{2, 0, 1}), 0);
  EXPECT_EQ((x2 * y), (Monomial{2, 1}));
  EXPECT_TRUE(x.divides(xy));
  EXPECT_FALSE(xy.divides(x2));
  EXPECT_EQ(x2.lcm(y2), (Monomial{2, 2}));
  EXPECT_THROW(Monomial({0xFFFFFFFFu}) * Monomial({1u}), ExponentOverflow);
}

TEST(MultiPoly, NormalizationAndPrinting) {
  const Prime p(3);
  const MultiPoly x = var(p, 2, 0), y = var(p, 2, 1);
  const MultiPoly f = x * (x - y) * (x - y.scaled(2)) * y;
  EXPECT_EQ(f.to_string({}), "x1^3*x2 + 2*x1*x2^3");
  const std::vector<std::string> names{"x", "y"};
  EXPECT_EQ(f.to_string(names), "x^3*y + 2*x*y^3");
  EXPECT_EQ(MultiPoly(p, 2, Level::ModP).to_string(names), "0");
  EXPECT_EQ((x + x + x).is_zero(), true);
  EXPECT_EQ(cst(p, 2, 5).to_string(names), "2");
  const MultiPoly g = MultiPoly::from_terms(p, 2, Level::ModP, {{Monomial{1, 0}, 1}, {Monomial{1, 0}, 2}});
  EXPECT_TRUE(g.is_zero());
}

TEST(MultiPoly, RingAxiomsRandom) {
  std::mt19937_64 rng(3);
  for (Coeff pv : {2, 3, 5}) {
    const Prime p(pv);
    for (Level level : {Level::ModP, Level::ModP2}) {
      for (int k = 0; k < 80; ++k) {
        const MultiPoly a = random_poly(p, 3, level, rng), b = random_poly(p, 3, level, rng),
                        c = random_poly(p, 3, level, rng);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a - a, MultiPoly(p, 3, level));
        ASSERT_EQ(a.pow(3), a * a * a);
        ASSERT_EQ(a.pow(0), cst(p, 3, 1, level));
      }
    }
  }
}

// Evaluation at points is a ring map; compare against direct evaluation.
TEST(MultiPoly, EvaluationHomomorphism) {
  std::mt19937_64 rng(13);
  const Prime p(5);
  for (int k = 0; k < 100; ++k) {
    const MultiPoly a = random_poly(p, 2, Level::ModP2, rng), b = random_poly(p, 2, Level::ModP2, rng);
    const std::vector<Coeff> pt{rng() % 25, rng() % 25};
    ASSERT_EQ(evaluate(a * b, pt), evaluate(a, pt) * evaluate(b, pt) % 25);
    ASSERT_EQ(evaluate(a + b, pt), (evaluate(a, pt) + evaluate(b, pt)) % 25);
  }
}

TEST(MultiPoly, FrobeniusIsPthPowerModP) {
  std::mt19937_64 rng(17);
  for (Coeff pv : {2, 3, 5}) {
    const Prime p(pv);
    for (int k = 0; k < 50; ++k) {
      const MultiPoly f = random_poly(p, 2, Level::ModP, rng);
      ASSERT_EQ(frobenius(f), f.pow(pv));
      const MultiPoly g = random_poly(p, 2, Level::ModP2, rng);
      ASSERT_EQ(frobenius(g), g.pow(pv));
    }
  }
}

TEST(MultiPoly, LevelsAndDivision) {
  const Prime p(3);
  const MultiPoly x = var(p, 1, 0, Level::ModP2);
  const MultiPoly f = x.pow(3) + cst(p, 1, 3, Level::ModP2) * x;
  EXPECT_EQ(reduce_mod_p(f), var(p, 1, 0).pow(3));
  EXPECT_EQ(divide_by_p(f - x.pow(3)), var(p, 1, 0));
  EXPECT_THROW(divide_by_p(f), NotDivisible);
  EXPECT_EQ(times_p(var(p, 1, 0)), cst(p, 1, 3, Level::ModP2) * x);
  EXPECT_THROW(var(p, 1, 0) + x, RingMismatch);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const MultiPoly a = random_poly(p, 2, Level::ModP, rng);
    ASSERT_EQ(reduce_mod_p(lift_mod_p2(a)), a);
    ASSERT_EQ(divide_by_p(times_p(a)), a);
  }
}

TEST(MultiPoly, TraceTable) {
  const Prime p2(2);
  // Tr(x^a) = x^((a - 1)/2) for odd a, 0 otherwise.
  EXPECT_EQ(monomial_trace(mono(p2, Level::ModP, {1})), cst(p2, 1, 1));
  EXPECT_EQ(monomial_trace(mono(p2, Level::ModP, {2})), MultiPoly(p2, 1, Level::ModP));
  EXPECT_EQ(monomial_trace(mono(p2, Level::ModP, {3})), var(p2, 1, 0));
  EXPECT_EQ(monomial_trace(mono(p2, Level::ModP, {2}) + mono(p2, Level::ModP, {3})), var(p2, 1, 0));
  const Prime p3(3);
  EXPECT_EQ(monomial_trace(mono(p3, Level::ModP, {2, 5})), mono(p3, Level::ModP, {0, 1}));
  EXPECT_EQ(monomial_trace(mono(p3, Level::ModP, {2, 4})), MultiPoly(p3, 2, Level::ModP));
}

TEST(MultiPoly, TraceIsPInverseLinear) {
  std::mt19937_64 rng(21);
  for (Coeff pv : {2, 3, 5}) {
    const Prime p(pv);
    for (int k = 0; k < 60; ++k) {
      const MultiPoly f = random_poly(p, 2, Level::ModP, rng), g = random_poly(p, 2, Level::ModP, rng, 8, 6);
      ASSERT_EQ(monomial_trace(frobenius(f) * g), f * monomial_trace(g));
    }
  }
}

TEST(MultiPoly, SubstituteAndDerivatives) {
  const Prime p(5);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    const MultiPoly f = random_poly(p, 2, Level::ModP, rng), g = random_poly(p, 2, Level::ModP, rng);
    const std::vector<MultiPoly> imgs{random_poly(p, 2, Level::ModP, rng), random_poly(p, 2, Level::ModP, rng)};
    ASSERT_EQ(substitute(f * g, imgs), substitute(f, imgs) * substitute(g, imgs));
    const std::vector<MultiPoly> ident{var(p, 2, 0), var(p, 2, 1)};
    ASSERT_EQ(substitute(f, ident), f);
    // Leibniz rule.
    ASSERT_EQ(partial_derivative(f * g, 0), partial_derivative(f, 0) * g + f * partial_derivative(g, 0));
  }
  EXPECT_EQ(partial_derivative(mono(p, Level::ModP, {5, 1}), 0), MultiPoly(p, 2, Level::ModP));
}

TEST(MultiPoly, EmbedAndDrop) {
  const Prime p(3);
  const MultiPoly f = var(p, 2, 0) * var(p, 2, 1).pow(2);
  const MultiPoly e = embed(f, 4, 1);
  EXPECT_EQ(e, var(p, 4, 1) * var(p, 4, 2).pow(2));
  EXPECT_EQ(drop_variable(e, 0), var(p, 3, 0) * var(p, 3, 1).pow(2));
  EXPECT_THROW(drop_variable(e, 1), Error);
}

TEST(MultiPoly, ExactDivision) {
  const Prime p(2);
  const MultiPoly x = var(p, 1, 0);
  const MultiPoly one = cst(p, 1, 1);
  MultiPoly q = one;
  EXPECT_TRUE(divide_exact(x + x.pow(2), one + x, q));
  EXPECT_EQ(q, x);
  EXPECT_FALSE(divide_exact(x + one, x, q));
  std::mt19937_64 rng(4);
  for (int k = 0; k < 60; ++k) {
    const MultiPoly a = random_poly(Prime(3), 2, Level::ModP, rng), b = random_poly(Prime(3), 2, Level::ModP, rng);
    if (b.is_zero()) continue;
    MultiPoly out = a;
    ASSERT_TRUE(divide_exact(a * b, b, out));
    ASSERT_EQ(out, a);
  }
}

TEST(Determinant, MatchesPermutationExpansion) {
  std::mt19937_64 rng(8);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int k = 0; k < 10; ++k) {
      PolyMatrix m(n);
      for (auto& row : m)
        for (std::size_t j = 0; j < n; ++j) row.push_back(random_poly(Prime(3), 2, Level::ModP, rng, 2, 2));
      ASSERT_EQ(determinant(m), testing::permutation_determinant(m));
    }
  }
}

}  // namespace
}  // namespace froblift
