#include "murank/asymptotics.hpp"

#include <gtest/gtest.h>

using namespace murank;

namespace {
PrimePower pp(std::uint64_t q) { return PrimePower::from_q(q); }

// (2 mu / t)(1 + 1/(sqrt(q^t) - 2)), evaluated by hand for a square root r.
Rational shimura_oracle(long mu, long t, long r) { return Rational(2 * mu) / t * (Rational(r - 1) / (r - 2)); }
}  // namespace

TEST(Uniform, Limits) {
  EXPECT_EQ(uniform_asymptotic(pp(2)).value, Rational(189, 22));
  EXPECT_EQ(uniform_asymptotic(pp(3)).value, Rational(6));
  EXPECT_EQ(uniform_asymptotic(pp(4)).value, Rational(87, 19));
  EXPECT_EQ(uniform_asymptotic(pp(5)).value, Rational(9, 2));
  EXPECT_EQ(uniform_asymptotic(pp(9)).value, Rational(4));
  // q = 16: (a) with Q = 4 gives 2(1 + 2/(2 + 4/5)) = 24/7, (c) gives 3(1 + 2/(14 + 16/17)) = 432/127
  EXPECT_EQ(uniform_asymptotic(pp(16)).value, std::min(Rational(24, 7), Rational(432, 127)));
  EXPECT_EQ(uniform_asymptotic(pp(7)).value, Rational(4));
  EXPECT_EQ(uniform_asymptotic(pp(2)).route, "uniform-limit");
}

TEST(Shimura, SmallFieldInstances) {
  EXPECT_EQ(shimura_asymptotic(pp(2), 6).value, Rational(35, 6));
  EXPECT_EQ(shimura_asymptotic(pp(3), 4).value, Rational(36, 7));
  EXPECT_EQ(shimura_asymptotic(pp(4), 4).value, Rational(30, 7));
  EXPECT_EQ(shimura_asymptotic(pp(5), 2).value, Rational(4));
  EXPECT_EQ(shimura_asymptotic(pp(7), 2).value, Rational(18, 5));
  EXPECT_EQ(shimura_asymptotic(pp(8), 2).value, Rational(7, 2));
  for (std::uint64_t q : {5, 7, 8})
    EXPECT_EQ(shimura_asymptotic(pp(q), 2).value, 3 * (1 + Rational(1, q - 2)));
  EXPECT_EQ(shimura_asymptotic(pp(2), 6).value, shimura_oracle(15, 6, 8));
  const auto s = shimura_asymptotic(pp(2), 6);
  ASSERT_TRUE(s.mu_qt_used.has_value());
  EXPECT_EQ(s.mu_qt_used->value, 15);
  EXPECT_NE(s.mu_qt_used->provenance.find("not constructed"), std::string::npos);
  EXPECT_EQ(s.route, "shimura(6)");
}

TEST(Shimura, Errors) {
  EXPECT_THROW(shimura_asymptotic(pp(2), 3), NotASquare);
  EXPECT_THROW(shimura_asymptotic(pp(2), 2), NotASquare);  // 4 < 9
  EXPECT_THROW(shimura_asymptotic(pp(2), 8), MissingTableEntry);
}

TEST(Shimura, AntitoneInMu) {
  for (long mu = 20; mu >= 10; --mu)
    EXPECT_LT(shimura_asymptotic_with(pp(2), 6, mu - 1, "x").value, shimura_asymptotic_with(pp(2), 6, mu, "x").value);
}

TEST(Best, Examples) {
  EXPECT_EQ(best_asymptotic(pp(8), 4).value, Rational(7, 2));
  EXPECT_EQ(best_asymptotic(pp(5), 2).value, Rational(4));
  EXPECT_EQ(best_asymptotic(pp(2), 6).value, Rational(35, 6));
  // t = 3 gives (2*5/3)(1 + 1/6) = 35/9 with mu_4(3) = 5, below the 30/7 of t = 4
  const auto four = best_asymptotic(pp(4), 6);
  EXPECT_EQ(four.value, shimura_oracle(5, 3, 8));
  EXPECT_LE(four.value, Rational(30, 7));
  EXPECT_EQ(best_asymptotic(pp(4), 6).route, "shimura(3)");
}

TEST(Best, NeverAboveUniform) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 49}) {
    const auto b = best_asymptotic(pp(q), 8);
    EXPECT_LE(b.value, uniform_asymptotic(pp(q)).value) << q;
    EXPECT_GT(b.value, 2) << q;
  }
  EXPECT_THROW(best_asymptotic(pp(2), 0), RangeError);
}
