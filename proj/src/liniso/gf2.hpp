#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liniso::gf2 {

inline constexpr int kMaxDim = 16;

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }

// Element of F2^n. Coordinate x_1 is bit 0.
class Vec {
 public:
  Vec() = default;
  Vec(int n, std::uint32_t bits);

  static Vec unit(int n, int i);  // e_{i+1}, zero-based i

  int dim() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  bool operator[](int i) const { return (bits_ >> i) & 1u; }

  friend bool operator==(const Vec&, const Vec&) = default;
  friend auto operator<=>(const Vec& a, const Vec& b) {
    return std::pair(a.n_, a.bits_) <=> std::pair(b.n_, b.bits_);
  }

 private:
  int n_ = 0;
  std::uint32_t bits_ = 0;
};

int dot(const Vec& a, const Vec& b);
std::string to_string(const Vec& v);  // x_1 first

// Square n x n matrix over F2. Row i is a bitmask whose bit j is entry (i, j).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n);  // zero matrix

  static Matrix identity(int n);
  static Matrix from_rows(int n, std::span<const std::uint32_t> rows);
  // Column j of the result is cols[j].
  static Matrix from_columns(int n, std::span<const std::uint32_t> cols);

  int dim() const { return n_; }
  std::uint32_t row(int i) const { return rows_[i]; }
  std::uint32_t column(int j) const;
  bool at(int i, int j) const { return (rows_[i] >> j) & 1u; }
  void set(int i, int j, bool value);
  void set_row(int i, std::uint32_t bits) { rows_[i] = bits & mask(); }

  // Mx on raw coordinates; no dimension check.
  std::uint32_t apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (int i = 0; i < n_; ++i) y |= static_cast<std::uint32_t>(parity(rows_[i] & x)) << i;
    return y;
  }

  Matrix transpose() const;
  int rank() const;
  bool nonsingular() const { return rank() == n_; }

  // Rows concatenated with row 0 most significant. Defines enumeration order.
  std::uint64_t encoding() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.rows_[i] != b.rows_[i]) return false;
    return true;
  }

 private:
  std::uint32_t mask() const { return n_ >= 32 ? ~0u : ((1u << n_) - 1u); }

  int n_ = 0;
  std::array<std::uint32_t, kMaxDim> rows_{};
};

Vec mat_vec(const Matrix& m, const Vec& x);
Matrix multiply(const Matrix& a, const Matrix& b);

// nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// |GL_n(F2)| = prod_{i<n} (2^n - 2^i), as a double for cost estimates.
double gl_order_estimate(int n);
std::uint64_t gl_order(int n);  // exact for n <= 8

// Throws GuardRefusal naming the sweep size when n > guard.
void check_gl_guard(int n, int guard);

// Walks GL_n(F2) in ascending encoding() order.
class GLEnumerator {
 public:
  explicit GLEnumerator(int n, int guard = 5);

  // Writes the next element into `out`. False once the group is exhausted.
  bool next(Matrix& out);
  std::uint64_t index() const { return produced_; }

 private:
  int n_;
  bool started_ = false;
  std::uint64_t produced_ = 0;
  std::array<std::uint32_t, kMaxDim> candidate_{};
  // echelon_[k] holds a reduced basis of rows 0..k-1, indexed by leading bit.
  std::array<std::array<std::uint32_t, kMaxDim>, kMaxDim + 1> echelon_{};
  Matrix current_;
};

// Calls visit(M) for every M in GL_n(F2) in enumeration order until it
// returns false.
void for_each_gl(int n, const std::function<bool(const Matrix&)>& visit, int guard = 5);

std::vector<Matrix> enumerate_gl(int n, int guard = 5);

struct BasisExtension {
  Matrix transform;               // R with R * vectors[selected[j]] = e_{j+1}
  int rank = 0;
  std::vector<std::size_t> selected;  // indices of the greedy independent subsequence
};

// Greedy left-to-right independent selection, completed with standard basis
// vectors into a basis B; returns R = B^{-1}.
BasisExtension extend_to_basis(int n, std::span<const Vec> vectors);

// Uniform over GL_n(F2) by rejection sampling.
Matrix random_nonsingular(int n, std::mt19937_64& rng);
Matrix random_nonsingular(int n, std::uint64_t seed);

// n lines of n characters in {0,1}, row-major.
std::string to_text(const Matrix& m);
Matrix parse_matrix(std::string_view text);

}  // namespace liniso::gf2
