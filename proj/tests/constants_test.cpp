#include "murank/constants.hpp"

#include <gtest/gtest.h>

using namespace murank;

namespace {
PrimePower pp(std::uint64_t q) { return PrimePower::from_q(q); }
const KnownValues& table() { return KnownValues::builtin(); }

// Definition of epsilon by direct search over t with t^2 <= 4q.
std::uint64_t epsilon_oracle(std::uint64_t q) {
  std::uint64_t best = 0;
  for (std::uint64_t t = 1; t * t <= 4 * q; ++t) {
    std::uint64_t a = t, b = q;
    while (b) std::tie(a, b) = std::make_pair(b, a % b);
    if (a == 1) best = t;
  }
  return best;
}
}  // namespace

TEST(Epsilon, Examples) {
  EXPECT_EQ(epsilon(pp(4)), 4u);
  EXPECT_EQ(epsilon(pp(7)), 5u);
  EXPECT_EQ(epsilon(pp(5)), 4u);
  EXPECT_EQ(epsilon(pp(2)), 1u);
}

TEST(Epsilon, NonSquaresMatchDefinition) {
  for (std::uint64_t q : {2, 3, 5, 7, 8, 11, 13, 27, 32, 125, 1031})
    EXPECT_EQ(epsilon(pp(q)), epsilon_oracle(q)) << q;
}

TEST(Epsilon, SquaresGiveTwiceTheRoot) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 49, 1024}) EXPECT_EQ(epsilon(pp(q * q)), 2 * q);
}

TEST(Alpha, Values) {
  EXPECT_EQ(alpha(pp(2)), 5);
  EXPECT_EQ(alpha(pp(3)), 2);
  EXPECT_EQ(alpha(pp(4)), 2);
  EXPECT_EQ(alpha(pp(5)), 2);
  EXPECT_EQ(alpha(pp(7)), -1);
}

TEST(EConst, Values) {
  EXPECT_EQ(e_const(pp(2)), 2);
  EXPECT_EQ(e_const(pp(4)), 1);
  EXPECT_EQ(e_const(pp(9)), 0);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma(pp(2), 4, table()), Rational(3, 2));
  EXPECT_EQ(gamma(pp(3), 2, table()), Rational(3, 2));
  EXPECT_EQ(gamma(pp(7), 2, table()), Rational(1, 2));
  EXPECT_EQ(gamma(pp(4), 2, table()), Rational(1));
  EXPECT_EQ(gamma(pp(7), 1, table()), Rational(1));
}

TEST(Gamma, MissingEntry) { EXPECT_THROW(gamma(pp(2), 3, table()), MissingTableEntry); }

TEST(CqTable, Rows) {
  EXPECT_EQ(c_q_table(pp(2)).value, Rational(22));
  EXPECT_EQ(c_q_table(pp(3)).value, Rational(27));
  EXPECT_EQ(c_q_table(pp(25)).value, Rational(4));
  const auto c16 = c_q_table(pp(16));
  EXPECT_EQ(c16.value, Rational(6));
  EXPECT_EQ(c16.matching.size(), 3u);
  EXPECT_EQ(c_q_table(pp(7)).value, Rational(6));
  EXPECT_EQ(c_q_table(pp(4)).value, Rational(18));
}

TEST(KnownValues, ImportedEntries) {
  EXPECT_EQ(table().mu_sym_exact(pp(2), 4)->value, 9);
  EXPECT_EQ(table().mu_sym_exact(pp(13), 2)->value, 3);
  EXPECT_EQ(table().mu_upper(pp(2), 4, 2)->value, 24);
  EXPECT_EQ(table().mu_upper(pp(2), 6)->value, 15);
  EXPECT_EQ(table().mu_upper(pp(3), 4)->value, 9);
  EXPECT_EQ(table().mu_upper(pp(4), 4)->value, 8);
  EXPECT_EQ(table().mu_upper(pp(5), 2, 2)->value, 8);
  EXPECT_EQ(table().mu_upper(pp(8), 2, 2)->value, 7);
  EXPECT_EQ(table().mu_upper(pp(3), 2, 2)->value, 9);
  EXPECT_EQ(table().mu_upper(pp(11), 1, 2)->value, 3);
}

TEST(KnownValues, Rules) {
  EXPECT_EQ(table().mu_upper(pp(8), 5)->value, 9);
  // Shokrollahi range for q = 7: 4.5 < n < 6.5
  EXPECT_EQ(table().mu_sym_exact(pp(7), 5)->value, 10);
  EXPECT_EQ(table().mu_sym_exact(pp(7), 6)->value, 12);
  EXPECT_FALSE(table().mu_sym_exact(pp(7), 7));
}

TEST(KnownValues, RatioMonotonicityOnTable) {
  const auto r2 = Rational(table().mu_sym_exact(pp(2), 2)->value, 2);
  const auto r4 = Rational(table().mu_sym_exact(pp(2), 4)->value, 4);
  EXPECT_LE(r2, r4);
  for (std::uint64_t q : {3, 4, 5, 7, 8, 9, 16, 25})
    for (unsigned d = 2; d <= 8; ++d) {
      const auto sd = table().mu_sym_exact(pp(q), d);
      if (!sd) continue;
      for (unsigned j = 1; j < d; ++j) {
        if (d % j) continue;
        const auto sj = table().mu_sym_exact(pp(q), j);
        ASSERT_TRUE(sj);
        EXPECT_LE(Rational(sj->value, j), Rational(sd->value, d)) << q << " " << j << " " << d;
      }
    }
}

TEST(KnownValues, ValidationRejectsInconsistentTables) {
  auto base = nlohmann::json::parse(data::kKnownValuesJson);
  auto bad = base;
  bad["records"].push_back({{"id", "bad"}, {"measure", "mu"}, {"bound", "upper"}, {"m", 3}, {"q", 7},
                            {"value", 6}, {"provenance", "x"}});
  EXPECT_THROW(KnownValues::from_json(bad), TableError);
  auto bad2 = base;
  bad2["records"].push_back({{"id", "bad2"}, {"measure", "mu_sym"}, {"bound", "upper"}, {"m", 4}, {"q", 2},
                             {"value", 8}, {"provenance", "x"}});
  EXPECT_THROW(KnownValues::from_json(bad2), TableError);
  auto bad3 = base;
  bad3["records"][0].erase("value");
  EXPECT_THROW(KnownValues::from_json(bad3), TableError);
  EXPECT_NO_THROW(KnownValues::from_json(base));
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(Rational(189, 22) * 22, Rational(189));
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational::parse("10848/11"), Rational(10848, 11));
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
}

TEST(Rational, SqrtHelpers) {
  // 3 <= sqrt(25) - sqrt(1) = 4, 4 <= 4, not 5
  EXPECT_TRUE(le_sqrt_difference(3, 25, 1));
  EXPECT_TRUE(le_sqrt_difference(4, 25, 1));
  EXPECT_FALSE(le_sqrt_difference(5, 25, 1));
  // floor((20 - 3 sqrt(8)) / 2) = floor(5.757...) = 5
  EXPECT_EQ(floor_sub_sqrt(20, 3, 8, 2), 5);
  EXPECT_EQ(floor_sub_sqrt(20, 3, 9, 2), 5);
  EXPECT_EQ(floor_sub_sqrt(21, 3, 9, 2), 6);
}
