#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liniso/boolfn.hpp"
#include "liniso/errors.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"
#include "liniso/phimap.hpp"
#include "support/oracle.hpp"

using namespace liniso;

TEST(Entropy, Values) {
  EXPECT_EQ(binary_entropy(0), 0);
  EXPECT_EQ(binary_entropy(1), 0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(binary_entropy(0.25), 0.811278, 1e-6);
  EXPECT_THROW(binary_entropy(1.5), ContractViolation);
}

TEST(HammingBall, Volumes) {
  EXPECT_EQ(hamming_ball_size(16, 0), 1);
  EXPECT_EQ(hamming_ball_size(16, 1), 17);
  EXPECT_EQ(hamming_ball_size(16, 2), 137);
  EXPECT_EQ(hamming_ball_size(64, 64), BigInt(1) << 64);
  EXPECT_THROW(hamming_ball_size(3, 4), ContractViolation);
}

TEST(Ball, Radius) {
  EXPECT_EQ(ball_radius(2, Rational(1, 4)), 1u);
  EXPECT_EQ(ball_radius(4, Rational(1, 8)), 2u);
  EXPECT_EQ(ball_radius(3, Rational(1, 10)), 0u);
}

TEST(Ball, ParityExample) {
  // The three nonzero characters are pairwise at Hamming distance 2, so their
  // radius-1 balls overlap: 3 centres, 3 weight-1 and 4 weight-3 tables.
  BooleanFunction chi1 = generate(Family::parse("parity:1"), 2, 0);
  EXPECT_EQ(liniso_ball(chi1, Rational(1, 4)).count(), 10u);
}

TEST(Ball, MatchesBruteForceDefinition) {
  std::mt19937_64 rng(1);
  for (int r = 1; r <= 3; ++r) {
    auto group = oracle::all_nonsingular(r);
    for (int trial = 0; trial < 4; ++trial) {
      BooleanFunction f = oracle::random_function(r, rng);
      for (auto omega : {Rational(1, 8), Rational(1, 4)}) {
        TableSet ball = liniso_ball(f, omega);
        std::uint64_t tables = std::uint64_t{1} << (1u << r);
        for (std::uint64_t t = 0; t < tables; ++t) {
          BooleanFunction g = table_function(r, t);
          EXPECT_EQ(ball.contains(t), oracle::linear_distance(f, g, group) <= omega);
        }
      }
    }
  }
}

TEST(Ball, ZeroRadiusIsTheOrbit) {
  BooleanFunction f = generate(Family::parse("and-all"), 3, 0);
  TableSet ball = liniso_ball(f, Rational(1, 16));
  // AND3 has 7 isomorphs: the indicator of each nonzero point.
  EXPECT_EQ(ball.count(), 7u);
  for (const auto& m : gf2::enumerate_gl(3)) EXPECT_TRUE(ball.contains(table_index(compose_linear(f, m))));
}

TEST(Ball, CountingBound) {
  std::mt19937_64 rng(2);
  for (int r = 2; r <= 3; ++r)
    for (auto omega : {Rational(1, 8), Rational(1, 4)})
      for (int trial = 0; trial < 5; ++trial) {
        BooleanFunction f = oracle::random_function(r, rng);
        double bound = std::pow(2.0, r * r + binary_entropy(to_double(omega)) * (1 << r));
        EXPECT_LE(static_cast<double>(liniso_ball(f, omega).count()), bound);
      }
}

TEST(Ball, Guard) {
  EXPECT_THROW(liniso_ball(BooleanFunction(5), Rational(1, 4)), GuardRefusal);
}

TEST(ChooseM, SmallestFeasible) {
  auto c = choose_m(1, Rational(1, 4));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->ell, 9);
  EXPECT_EQ(c->m, 512u);
  double h = binary_entropy(0.25);
  EXPECT_LT(256 - 64 - h * 256, 1);
  for (int n : {1, 10, 100, 1000}) {
    auto s = choose_m(n, Rational(1, 4));
    ASSERT_TRUE(s);
    double m = double(s->m);
    EXPECT_GE(m - s->ell * s->ell - h * m, n);
    double half = m / 2;
    EXPECT_LT(half - (s->ell - 1) * (s->ell - 1) - h * half, n);
  }
}

TEST(ChooseM, GrowsAsOmegaApproachesHalf) {
  int prev = 0;
  for (auto omega : {Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(7, 16), Rational(15, 32)}) {
    auto c = choose_m(16, omega);
    ASSERT_TRUE(c);
    EXPECT_GE(c->ell, prev);
    prev = c->ell;
  }
  EXPECT_THROW(choose_m(1, Rational(1, 2)), ContractViolation);
  EXPECT_THROW(choose_m(1, 0), ContractViolation);
  EXPECT_FALSE(choose_m(1 << 30, Rational(1, 4)).has_value());
}

TEST(Phi, ToyConstruction) {
  auto c = construct_phi(2, 4, Rational(1, 8));
  ASSERT_TRUE(c.success);
  EXPECT_EQ(c.map.tables.size(), 4u);
  EXPECT_EQ(c.map.m, 16u);
  EXPECT_EQ(c.map.tables[0], BooleanFunction(4));  // smallest table first
  auto rep = verify_phi(c.map);
  EXPECT_TRUE(rep.pass);
  ASSERT_TRUE(rep.min_distance);
  EXPECT_GE(*rep.min_distance, Rational(1, 8));
  EXPECT_EQ(rep.pairs, 6u);
}

TEST(Phi, SmallExample) {
  auto c = construct_phi(1, 2, Rational(1, 4));
  ASSERT_TRUE(c.success);
  EXPECT_GE(linear_distance(c.map.tables[0], c.map.tables[1]).value(), Rational(1, 4));
}

TEST(Phi, PigeonholeFailure) {
  auto c = construct_phi(5, 2, Rational(1, 4));
  EXPECT_FALSE(c.success);
  EXPECT_EQ(c.remaining, 0u);
  EXPECT_LT(c.assigned, 32u);
}

TEST(Phi, Deterministic) {
  auto a = construct_phi(2, 3, Rational(1, 8));
  auto b = construct_phi(2, 3, Rational(1, 8));
  EXPECT_EQ(a.success, b.success);
  EXPECT_EQ(a.map.tables, b.map.tables);
}

TEST(Phi, VerifyCatchesIsomorphicImages) {
  PhiMap bad;
  bad.n = 1;
  bad.ell = 2;
  bad.m = 4;
  bad.omega = Rational(1, 4);
  bad.tables = {generate(Family::parse("parity:1"), 2, 0), generate(Family::parse("parity:2"), 2, 0)};
  auto rep = verify_phi(bad);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(*rep.min_distance, 0);
  EXPECT_EQ(rep.witness_a, 0u);
  EXPECT_EQ(rep.witness_b, 1u);
}

TEST(Reduction, ExactOracleDecidesEquality) {
  auto c = construct_phi(2, 4, Rational(1, 8));
  ASSERT_TRUE(c.success);
  auto oracle = exact_oracle();
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) EXPECT_EQ(reduce_equ(a, b, c.map, oracle), a == b);
  EXPECT_THROW(reduce_equ(4, 0, c.map, oracle), ContractViolation);
}

TEST(Reduction, PublicCoinOracleAgrees) {
  auto c = construct_phi(2, 4, Rational(1, 8));
  int agree = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto oracle = public_coin_oracle(c.map.omega, seed);
    for (std::uint64_t a = 0; a < 4; ++a)
      for (std::uint64_t b = 0; b < 4; ++b) {
        agree += reduce_equ(a, b, c.map, oracle) == (a == b);
        ++total;
      }
  }
  EXPECT_GE(agree * 100, total * 99);
}

TEST(Reduction, DeterministicOracleAgrees) {
  auto c = construct_phi(2, 4, Rational(1, 8));
  auto oracle = deterministic_oracle(c.map.omega);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) EXPECT_EQ(reduce_equ(a, b, c.map, oracle), a == b);
}
