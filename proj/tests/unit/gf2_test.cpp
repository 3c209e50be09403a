#include <gtest/gtest.h>

#include <random>
#include <set>

#include "liniso/errors.hpp"
#include "liniso/gf2.hpp"
#include "support/oracle.hpp"

using namespace liniso;
using namespace liniso::gf2;

namespace {

Matrix to_matrix(const oracle::Dense& d) {
  const int n = static_cast<int>(d.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, d[i][j]);
  return m;
}

}  // namespace

TEST(Gf2, GroupOrderMatchesBruteForceCount) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(oracle::all_nonsingular(n).size(), oracle::gl_order_formula(n)) << n;
    EXPECT_EQ(gl_order(n), oracle::gl_order_formula(n)) << n;
    EXPECT_EQ(enumerate_gl(n).size(), oracle::gl_order_formula(n)) << n;
  }
  EXPECT_EQ(gl_order(2), 6u);
  EXPECT_EQ(gl_order(3), 168u);
  EXPECT_EQ(gl_order(4), 20160u);
  EXPECT_EQ(gl_order(5), 9999360u);
}

TEST(Gf2, EnumerationIsStrictlyAscendingAndNonsingular) {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t prev = 0;
    bool first = true;
    for_each_gl(n, [&](const Matrix& m) {
      EXPECT_TRUE(m.nonsingular());
      if (!first) {
        EXPECT_GT(m.encoding(), prev);
      }
      prev = m.encoding();
      first = false;
      return true;
    });
  }
}

TEST(Gf2, EnumerationStartsAtSmallestEncoding) {
  Matrix m;
  GLEnumerator it(2);
  ASSERT_TRUE(it.next(m));
  // Rows 01, 10: encoding 0b0110 is the smallest nonsingular 2x2.
  EXPECT_EQ(m.encoding(), 0b0110u);
  EXPECT_EQ(it.index(), 1u);
}

TEST(Gf2, EnumerationCanStopEarly) {
  int seen = 0;
  for_each_gl(3, [&](const Matrix&) { return ++seen < 10; });
  EXPECT_EQ(seen, 10);
}

TEST(Gf2, GuardRefusesLargeSweeps) {
  EXPECT_THROW(GLEnumerator(6), GuardRefusal);
  EXPECT_NO_THROW(GLEnumerator(6, 6));
  try {
    check_gl_guard(7, 5);
    FAIL();
  } catch (const GuardRefusal& e) {
    EXPECT_NE(std::string(e.what()).find("guard"), std::string::npos);
  }
}

TEST(Gf2, RankAgreesWithOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    oracle::Dense d(n, std::vector<int>(n));
    for (auto& row : d)
      for (auto& e : row) e = static_cast<int>(rng() & 1);
    EXPECT_EQ(to_matrix(d).rank(), oracle::rank(d));
  }
}

TEST(Gf2, ApplyAgreesWithOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    auto d = oracle::random_nonsingular(n, rng);
    Matrix m = to_matrix(d);
    for (std::uint32_t x = 0; x < (1u << n); ++x) EXPECT_EQ(m.apply(x), oracle::apply(d, x));
  }
}

TEST(Gf2, InverseAndMultiply) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Matrix m = random_nonsingular(n, rng);
    auto inv = inverse(m);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(multiply(m, *inv), Matrix::identity(n));
    EXPECT_EQ(multiply(*inv, m), Matrix::identity(n));
    for (std::uint32_t x = 0; x < (1u << n); ++x) EXPECT_EQ(inv->apply(m.apply(x)), x);
  }
  Matrix singular(3);
  singular.set_row(0, 0b011);
  singular.set_row(1, 0b011);
  singular.set_row(2, 0b100);
  EXPECT_FALSE(inverse(singular).has_value());
}

TEST(Gf2, MultiplyComposesMaps) {
  std::mt19937_64 rng(14);
  Matrix a = random_nonsingular(5, rng), b = random_nonsingular(5, rng);
  Matrix ab = multiply(a, b);
  for (std::uint32_t x = 0; x < 32; ++x) EXPECT_EQ(ab.apply(x), a.apply(b.apply(x)));
}

TEST(Gf2, TransposeAndColumns) {
  std::uint32_t cols[] = {0b001, 0b110, 0b011};
  Matrix m = Matrix::from_columns(3, cols);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(m.column(j), cols[j]);
  Matrix t = m.transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(t.at(i, j), m.at(j, i));
  for (int j = 0; j < 3; ++j) EXPECT_EQ(m.apply(1u << j), cols[j]);
}

TEST(Gf2, DotProduct) {
  EXPECT_EQ(dot(Vec(4, 0b1011), Vec(4, 0b0011)), 0);
  EXPECT_EQ(dot(Vec(4, 0b1011), Vec(4, 0b0001)), 1);
  EXPECT_EQ(to_string(Vec(3, 0b001)), "100");
  EXPECT_EQ(Vec::unit(4, 2).bits(), 0b0100u);
}

TEST(Gf2, ExtendToBasisSendsSelectedVectorsToUnits) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    int k = static_cast<int>(rng() % (n + 3));
    std::vector<Vec> vs;
    for (int i = 0; i < k; ++i) vs.emplace_back(n, static_cast<std::uint32_t>(rng() & ((1u << n) - 1)));
    BasisExtension ext = extend_to_basis(n, vs);
    EXPECT_TRUE(ext.transform.nonsingular());
    EXPECT_EQ(static_cast<std::size_t>(ext.rank), ext.selected.size());
    for (std::size_t j = 0; j < ext.selected.size(); ++j)
      EXPECT_EQ(ext.transform.apply(vs[ext.selected[j]].bits()), 1u << j);
    // Every input lies in the span of the selected ones, so lands in the first rank coordinates.
    for (const auto& v : vs) EXPECT_EQ(ext.transform.apply(v.bits()) >> ext.rank, 0u);
    oracle::Dense d;
    for (const auto& v : vs) {
      std::vector<int> row(n);
      for (int j = 0; j < n; ++j) row[j] = v[j];
      d.push_back(row);
    }
    EXPECT_EQ(ext.rank, d.empty() ? 0 : oracle::rank(d));
  }
}

TEST(Gf2, ExtendToBasisGreedyIsLeftToRight) {
  std::vector<Vec> vs{Vec(3, 0b011), Vec(3, 0b011), Vec(3, 0b001), Vec(3, 0b010)};
  BasisExtension ext = extend_to_basis(3, vs);
  EXPECT_EQ(ext.rank, 2);
  EXPECT_EQ(ext.selected, (std::vector<std::size_t>{0, 2}));
}

TEST(Gf2, RandomNonsingularIsUniformish) {
  std::mt19937_64 rng(16);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) seen.insert(random_nonsingular(2, rng).encoding());
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_EQ(random_nonsingular(4, 99), random_nonsingular(4, 99));
}

TEST(Gf2, MatrixTextRoundTrip) {
  Matrix m = random_nonsingular(5, 3);
  EXPECT_EQ(parse_matrix(to_text(m)), m);
  EXPECT_EQ(to_text(Matrix::identity(2)), "10\n01\n");
  EXPECT_THROW(parse_matrix("10\n0x\n"), ParseError);
  EXPECT_THROW(parse_matrix("10\n011\n"), ParseError);
}
