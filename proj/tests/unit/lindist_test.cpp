#include <gtest/gtest.h>

#include <random>

#include "liniso/boolfn.hpp"
#include "liniso/errors.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"
#include "support/oracle.hpp"

using namespace liniso;

TEST(LinearDistance, MatchesBruteForceOverAllMatrices) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 3; ++n) {
    auto group = oracle::all_nonsingular(n);
    for (int trial = 0; trial < 40; ++trial) {
      BooleanFunction f = oracle::random_function(n, rng), g = oracle::random_function(n, rng);
      auto r = linear_distance(f, g);
      EXPECT_EQ(r.value(), oracle::linear_distance(f, g, group));
      EXPECT_EQ(mismatches(compose_linear(f, r.witness), g), r.mismatches);
      EXPECT_TRUE(r.witness.nonsingular());
    }
  }
}

TEST(LinearDistance, WitnessIsFirstMinimiser) {
  std::mt19937_64 rng(2);
  BooleanFunction f = oracle::random_function(3, rng), g = oracle::random_function(3, rng);
  auto r = linear_distance(f, g);
  for (const auto& m : gf2::enumerate_gl(3)) {
    auto d = mismatches(compose_linear(f, m), g);
    if (m == r.witness) break;
    EXPECT_GT(d, r.mismatches);
  }
}

TEST(LinearDistance, ParitiesAreIsomorphic) {
  BooleanFunction a = generate(Family::parse("parity:1"), 3, 0);
  BooleanFunction b = generate(Family::parse("parity:6"), 3, 0);
  EXPECT_EQ(linear_distance(a, b).value(), 0);
  EXPECT_TRUE(is_lin_isomorphic(a, b));
  EXPECT_FALSE(is_lin_isomorphic(a, BooleanFunction(3)));
  EXPECT_EQ(linear_distance(a, BooleanFunction(3)).value(), Rational(1, 2));
}

TEST(LinearDistance, GroupProperties) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    BooleanFunction f = oracle::random_function(3, rng), g = oracle::random_function(3, rng),
                    h = oracle::random_function(3, rng);
    gf2::Matrix m = gf2::random_nonsingular(3, rng), k = gf2::random_nonsingular(3, rng);
    Rational fg = linear_distance(f, g).value();
    EXPECT_EQ(fg, linear_distance(g, f).value());
    EXPECT_EQ(fg, linear_distance(compose_linear(f, m), compose_linear(g, k)).value());
    EXPECT_LE(fg, linear_distance(f, h).value() + linear_distance(h, g).value());
    EXPECT_EQ(linear_distance(f, compose_linear(f, m)).value(), 0);
  }
}

TEST(LinearDistance, Guard) {
  EXPECT_THROW(linear_distance(BooleanFunction(6), BooleanFunction(6)), GuardRefusal);
  EXPECT_THROW(linear_distance(BooleanFunction(2), BooleanFunction(3)), ContractViolation);
}

TEST(AffineDistance, MatchesBruteForce) {
  std::mt19937_64 rng(4);
  auto group = oracle::all_nonsingular(3);
  for (int trial = 0; trial < 20; ++trial) {
    BooleanFunction f = oracle::random_function(3, rng), g = oracle::random_function(3, rng);
    std::uint64_t best = 8;
    for (const auto& m : group)
      for (std::uint64_t a = 0; a < 8; ++a) {
        std::uint64_t d = 0;
        for (std::uint64_t x = 0; x < 8; ++x) d += f.bit(oracle::apply(m, x) ^ a) != g.bit(x);
        best = std::min(best, d);
      }
    auto r = affine_distance(f, g);
    EXPECT_EQ(r.mismatches, best);
    EXPECT_LE(r.value(), linear_distance(f, g).value());
    std::uint64_t d = 0;
    for (std::uint64_t x = 0; x < 8; ++x)
      d += f.bit(r.witness.apply(static_cast<std::uint32_t>(x)) ^ r.shift.bits()) != g.bit(x);
    EXPECT_EQ(d, r.mismatches);
  }
}

TEST(AffineDistance, ShiftedParityIsAffineButNotLinear) {
  BooleanFunction f = generate(Family::parse("and-all"), 2, 0);
  BooleanFunction g(2);
  for (std::uint64_t x = 0; x < 4; ++x) g.set_bit(x, f.bit(x ^ 3));
  EXPECT_EQ(affine_distance(f, g).value(), 0);
  EXPECT_GT(linear_distance(f, g).value(), 0);
}

TEST(Canonical, MatchesOracleAndIsOrbitInvariant) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n) {
    auto group = oracle::all_nonsingular(n);
    for (int trial = 0; trial < 20; ++trial) {
      BooleanFunction f = oracle::random_function(n, rng);
      auto c = canonical_form(f);
      EXPECT_EQ(c.function, oracle::canonical(f, group));
      EXPECT_EQ(c.function, compose_linear(f, c.witness));
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    BooleanFunction f = oracle::random_function(4, rng);
    gf2::Matrix m = gf2::random_nonsingular(4, rng);
    EXPECT_EQ(canonical_form(f).function, canonical_form(compose_linear(f, m)).function);
  }
}

TEST(Canonical, ParitiesShareCanonicalForm) {
  auto a = canonical_form(generate(Family::parse("parity:1"), 3, 0)).function;
  auto b = canonical_form(generate(Family::parse("parity:2"), 3, 0)).function;
  EXPECT_EQ(a, b);
}
