#include "murank/field.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace murank;

namespace {

// Independent irreducibility check for tiny degrees: no roots in F_p
// (enough for degree 2 and 3).
bool has_root(std::uint64_t p, const std::vector<std::uint64_t>& f) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
    if (acc == 0) return true;
  }
  return false;
}

const std::vector<std::pair<std::uint64_t, unsigned>> kFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {2, 5}, {3, 3}, {13, 1}};

}  // namespace

TEST(PrimePower, FactorsPrimePowers) {
  const auto q = PrimePower::from_q(16);
  EXPECT_EQ(q.p, 2u);
  EXPECT_EQ(q.r, 4u);
  EXPECT_EQ(PrimePower::from_q(49).square_root().q, 7u);
  EXPECT_THROW(PrimePower::from_q(12), NonPrime);
  EXPECT_THROW(PrimePower::from_q(1), NonPrime);
  EXPECT_THROW(PrimePower::make(4, 1), NonPrime);
  EXPECT_THROW(PrimePower::make(2, 33), UnsupportedSize);
  EXPECT_NO_THROW(PrimePower::make(2, 32));
}

TEST(MakeField, PrimeFieldUsesModulusX) {
  const auto F = make_field(2, 1);
  EXPECT_EQ(F.modulus(), (std::vector<std::uint64_t>{0, 1}));
}

TEST(MakeField, QuadraticOverF2MatchesEnumeration) {
  std::vector<std::vector<std::uint64_t>> irreducible;
  for (std::uint64_t c1 = 0; c1 < 2; ++c1)
    for (std::uint64_t c0 = 0; c0 < 2; ++c0)
      if (!has_root(2, {c0, c1, 1})) irreducible.push_back({c0, c1, 1});
  ASSERT_EQ(irreducible.size(), 1u);
  EXPECT_EQ(make_field(2, 2).modulus(), irreducible.front());
}

TEST(MakeField, SmallestCubicAgreesWithRootTest) {
  for (std::uint64_t p : {2, 3, 5}) {
    // first root-free monic cubic with coefficients read from x^2 down to x^0
    std::vector<std::uint64_t> first;
    for (std::uint64_t c2 = 0; c2 < p && first.empty(); ++c2)
      for (std::uint64_t c1 = 0; c1 < p && first.empty(); ++c1)
        for (std::uint64_t c0 = 0; c0 < p && first.empty(); ++c0)
          if (!has_root(p, {c0, c1, c2, 1})) first = {c0, c1, c2, 1};
    EXPECT_EQ(make_field(p, 3).modulus(), first) << "p=" << p;
  }
}

TEST(MakeField, Deterministic) {
  for (auto [p, r] : kFields) EXPECT_EQ(make_field(p, r).modulus(), make_field(p, r).modulus());
}

TEST(MakeField, RejectsCompositeCharacteristic) { EXPECT_THROW(make_field(4, 1), NonPrime); }

TEST(GaloisField, MultiplicativeGroupHasOrderQMinusOne) {
  for (auto [p, r] : kFields) {
    const auto F = make_field(p, r);
    for (std::uint64_t a = 1; a < F.size(); ++a) {
      ASSERT_EQ(F.pow(a, F.size() - 1), F.one());
      ASSERT_EQ(F.mul(a, F.inv(a)), F.one());
    }
  }
}

TEST(ExtensionAlgebra, F4SquareOfGenerator) {
  const ExtensionAlgebra A(make_field(2, 1), 2, 1);
  ASSERT_EQ(A.ext_modulus(), poly::make({1, 1, 1}));
  EXPECT_EQ(A.mul({0, 1}, {0, 1}), (ExtensionAlgebra::Element{1, 1}));
}

TEST(ExtensionAlgebra, TruncationKillsTSquared) {
  const ExtensionAlgebra A(make_field(2, 1), 1, 2);
  EXPECT_EQ(A.mul({0, 1}, {0, 1}), (ExtensionAlgebra::Element{0, 0}));
}

TEST(ExtensionAlgebra, IdentityAndDimensionChecks) {
  const ExtensionAlgebra A(make_field(3, 1), 3, 2);
  EXPECT_EQ(A.dimension(), 6u);
  const ExtensionAlgebra::Element y{1, 2, 0, 2, 1, 1};
  EXPECT_EQ(A.mul(A.one(), y), y);
  EXPECT_THROW(A.mul({1, 2}, y), DimensionMismatch);
  EXPECT_THROW(ExtensionAlgebra(make_field(2, 1), 33, 2), UnsupportedSize);
}

TEST(ExtensionAlgebra, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  const std::vector<std::tuple<std::uint64_t, unsigned, unsigned, unsigned>> cases = {
      {2, 1, 4, 1}, {2, 2, 3, 2}, {3, 1, 2, 3}, {5, 1, 3, 1}, {2, 3, 2, 2}, {7, 1, 5, 1}, {3, 2, 2, 1}};
  for (auto [p, r, m, l] : cases) {
    const ExtensionAlgebra A(make_field(p, r), m, l);
    const auto Q = A.ground().size();
    auto rand_elem = [&] {
      auto e = A.zero();
      for (auto& c : e) c = rng() % Q;
      return e;
    };
    for (int i = 0; i < 1000; ++i) {
      const auto x = rand_elem(), y = rand_elem(), z = rand_elem();
      ASSERT_EQ(A.mul(x, y), A.mul(y, x));
      ASSERT_EQ(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z)));
      ASSERT_EQ(A.mul(x, A.add(y, z)), A.add(A.mul(x, y), A.mul(x, z)));
    }
  }
}

TEST(Interpolate, ConstantThroughOnePoint) {
  const auto F = make_field(5, 1);
  EXPECT_EQ(interpolate(F, {{0, 3}}, std::nullopt, 0), poly::make({3}));
}

TEST(Interpolate, QuadraticOverF5RoundTrips) {
  const auto F = make_field(5, 1);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> pts = {{0, 1}, {1, 2}, {2, 0}};
  const auto P = interpolate(F, pts, std::nullopt, 2);
  EXPECT_LE(P.degree(), 2);
  for (auto [x, y] : pts) EXPECT_EQ(poly::eval(F, P, x), y);
}

TEST(Interpolate, ValueAtInfinityIsLeadingCoefficient) {
  const auto F = make_field(7, 1);
  EXPECT_EQ(interpolate(F, {{0, 4}}, 3, 1), poly::make({4, 3}));
}

TEST(Interpolate, Errors) {
  const auto F = make_field(5, 1);
  EXPECT_THROW(interpolate(F, {{1, 1}, {1, 2}}, std::nullopt, 1), DuplicatePoint);
  EXPECT_THROW(interpolate(F, {{1, 1}}, std::nullopt, 1), CountMismatch);
}

TEST(Interpolate, InvertsEvaluationOnRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (auto [p, r] : kFields) {
    const auto F = make_field(p, r);
    for (unsigned deg = 0; deg + 1 <= std::min<std::uint64_t>(F.size(), 9); ++deg)
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::uint64_t> c(deg + 1);
        for (auto& ci : c) ci = rng() % F.size();
        const auto f = poly::make(c);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
        for (unsigned i = 0; i <= deg; ++i) pts.push_back({F.element(i), poly::eval(F, f, F.element(i))});
        ASSERT_EQ(interpolate(F, pts, std::nullopt, deg), f);
        if (deg >= 1) {
          pts.pop_back();
          ASSERT_EQ(interpolate(F, pts, c.back(), deg), f);
        }
      }
  }
}
