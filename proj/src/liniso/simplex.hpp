#pragma once

// Dense two-phase tableau simplex with Bland's rule. Shared by the exact
// (rational) and floating approximate-spectral-norm solvers.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "liniso/errors.hpp"
#include "liniso/rational.hpp"

namespace liniso::detail {

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static int sign(const Rational& v, double) { return sgn(v); }
};

template <>
struct FieldTraits<double> {
  static int sign(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }
};

// minimize c.z subject to A z = b, z >= 0, b >= 0. Each row names an initial
// basic column that must be a unit column in A (a slack) or -1 to request an
// artificial variable.
template <class T>
class DenseSimplex {
 public:
  struct Result {
    T objective{};
    std::vector<T> z;
    std::size_t pivots = 0;
  };

  DenseSimplex(std::vector<std::vector<T>> a, std::vector<T> b, std::vector<T> c,
               std::vector<int> initial_basis, double tol, std::size_t max_pivots)
      : rows_(a.size()),
        structural_(c.size()),
        tol_(tol),
        max_pivots_(max_pivots),
        cost_(std::move(c)) {
    std::size_t artificials = 0;
    for (int col : initial_basis)
      if (col < 0) ++artificials;
    cols_ = structural_ + artificials;
    tableau_.assign(rows_, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(rows_, 0);
    std::size_t next_art = structural_;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < structural_; ++j) tableau_[i][j] = a[i][j];
      tableau_[i][cols_] = b[i];
      if (initial_basis[i] < 0) {
        tableau_[i][next_art] = T(1);
        basis_[i] = next_art++;
      } else {
        basis_[i] = static_cast<std::size_t>(initial_basis[i]);
      }
    }
  }

  Result solve() {
    // Phase 1: minimise the sum of artificial variables.
    if (cols_ > structural_) {
      std::vector<T> phase1(cols_, T(0));
      for (std::size_t j = structural_; j < cols_; ++j) phase1[j] = T(1);
      run(phase1, cols_);
      T infeas = objective_value(phase1);
      if (sign(infeas) > 0) throw LpFailure("linear program is infeasible");
      drive_out_artificials();
    }
    std::vector<T> cost(cols_, T(0));
    for (std::size_t j = 0; j < structural_; ++j) cost[j] = cost_[j];
    run(cost, structural_);
    Result r;
    r.objective = objective_value(cost);
    r.z.assign(structural_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < structural_) r.z[basis_[i]] = tableau_[i][cols_];
    r.pivots = pivots_;
    return r;
  }

 private:
  int sign(const T& v) const { return FieldTraits<T>::sign(v, tol_); }

  T objective_value(const std::vector<T>& cost) const {
    T v(0);
    for (std::size_t i = 0; i < rows_; ++i)
      if (sign(cost[basis_[i]]) != 0) v += cost[basis_[i]] * tableau_[i][cols_];
    return v;
  }

  // Reduced costs d_j = c_j - c_B B^{-1} A_j for columns below `enterable`.
  std::vector<T> reduced_costs(const std::vector<T>& cost, std::size_t enterable) const {
    std::vector<T> d(enterable);
    for (std::size_t j = 0; j < enterable; ++j) d[j] = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const T& cb = cost[basis_[i]];
      if (sign(cb) == 0) continue;
      for (std::size_t j = 0; j < enterable; ++j)
        if (sign(tableau_[i][j]) != 0) d[j] -= cb * tableau_[i][j];
    }
    return d;
  }

  void run(const std::vector<T>& cost, std::size_t enterable) {
    std::vector<T> d = reduced_costs(cost, enterable);
    for (;;) {
      std::size_t enter = enterable;
      for (std::size_t j = 0; j < enterable; ++j)
        if (sign(d[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == enterable) return;

      std::size_t leave = rows_;
      T best{};
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sign(tableau_[i][enter]) <= 0) continue;
        T ratio = tableau_[i][cols_] / tableau_[i][enter];
        if (leave == rows_ || ratio < best ||
            (!(best < ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) throw LpFailure("linear program is unbounded");
      if (++pivots_ > max_pivots_)
        throw LpFailure("simplex pivot cap of " + std::to_string(max_pivots_) +
                        " exceeded (" + std::to_string(rows_) + " rows, " +
                        std::to_string(cols_) + " columns)");
      pivot(leave, enter);
      // Update reduced costs with the new pivot row.
      T factor = d[enter];
      if (sign(factor) != 0)
        for (std::size_t j = 0; j < enterable; ++j)
          if (sign(tableau_[leave][j]) != 0) d[j] -= factor * tableau_[leave][j];
      d[enter] = T(0);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    std::vector<T>& pr = tableau_[row];
    T inv = T(1) / pr[col];
    for (auto& v : pr) {
      if (sign(v) != 0)
        v *= inv;
      else
        v = T(0);
    }
    pr[col] = T(1);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j)
      if (sign(pr[j]) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      T factor = tableau_[i][col];
      if (sign(factor) == 0) continue;
      for (std::size_t j : nz) tableau_[i][j] -= factor * pr[j];
      tableau_[i][col] = T(0);
    }
    basis_[row] = col;
  }

  // Artificials left basic at level zero are pivoted onto any structural
  // column with a nonzero entry; a row with none is redundant and dropped.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_;) {
      if (basis_[i] < structural_) {
        ++i;
        continue;
      }
      std::size_t col = structural_;
      for (std::size_t j = 0; j < structural_; ++j)
        if (sign(tableau_[i][j]) != 0) {
          col = j;
          break;
        }
      if (col < structural_) {
        pivot(i, col);
        ++i;
      } else {
        tableau_.erase(tableau_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --rows_;
      }
    }
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_ = 0;
  double tol_;
  std::size_t max_pivots_;
  std::size_t pivots_ = 0;
  std::vector<T> cost_;
  std::vector<std::vector<T>> tableau_;
  std::vector<std::size_t> basis_;
};

}  // namespace liniso::detail
