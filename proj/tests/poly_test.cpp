#include <gtest/gtest.h>

#include "qkfib/poly.hpp"

using namespace qkfib;

TEST(EvalPoly, SpecExamples) {
  const SequenceParams p(3, 2);
  EXPECT_EQ(eval_poly(CharPoly(p), mpq_class(3)), -1);
  EXPECT_EQ(eval_poly(AuxPoly(p), mpq_class(1)), 0);
  EXPECT_EQ(eval_poly(CharPoly(p), mpq_class(4)), 16 - 12 - 1);
}

TEST(EvalPoly, PhiAtQIsMinusGeometricSum) {
  for (int q = 3; q <= 6; ++q)
    for (int k = 2; k <= 8; ++k) {
      mpz_class expected = 0, power = 1;
      for (int i = 0; i <= k - 2; ++i) {
        expected -= power;
        power *= q;
      }
      EXPECT_EQ(eval_poly(CharPoly({q, k}), mpq_class(q)), expected);
    }
}

TEST(CharPoly, Shape) {
  const CharPoly phi({5, 6});
  ASSERT_EQ(phi.poly().degree(), 6u);
  EXPECT_EQ(phi.poly()[6], 1);
  EXPECT_EQ(phi.poly()[5], -5);
  EXPECT_EQ(phi.poly()[0], -1);
  // k = 2 keeps both lower coefficients distinct.
  const CharPoly small({3, 2});
  EXPECT_EQ(small.poly().coefficients(), (std::vector<Integer>{-1, -3, 1}));
}

TEST(AuxPoly, IdentityWithCharPoly) {
  const IntPoly t_minus_1(std::vector<Integer>{-1, 1});
  for (int q = 1; q <= 10; ++q)
    for (int k = 2; k <= 16; ++k) {
      const SequenceParams p(q, k);
      EXPECT_EQ(t_minus_1 * CharPoly(p).poly(), AuxPoly(p).poly()) << describe(p);
    }
}

TEST(SignAtDyadic, MatchesRationalEvaluation) {
  const IntPoly poly = CharPoly({3, 4}).poly();
  for (long m = -40; m <= 40; m += 3)
    for (long e = -6; e <= 3; ++e) {
      mpq_class x(m);
      if (e >= 0)
        x *= mpz_class(1) << e;
      else
        x /= mpz_class(1) << -e;
      EXPECT_EQ(sign_at_dyadic(poly, m, e), sgn(eval_poly(poly, x))) << m << "*2^" << e;
    }
}

TEST(IntPoly, Derivative) {
  const IntPoly p(std::vector<Integer>{5, 0, 3, 2});
  EXPECT_EQ(p.derivative().coefficients(), (std::vector<Integer>{0, 6, 6}));
}
