#include "liniso/gf2.hpp"

#include <cmath>
#include <sstream>

#include "liniso/errors.hpp"

namespace liniso::gf2 {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim)
    throw ContractViolation("dimension " + std::to_string(n) + " outside [0, " +
                            std::to_string(kMaxDim) + "]");
}

// Reduces v against an echelon basis indexed by leading bit.
std::uint32_t reduce(std::uint32_t v, const std::array<std::uint32_t, kMaxDim>& echelon) {
  while (v) {
    int lead = 31 - std::countl_zero(v);
    if (!echelon[lead]) break;
    v ^= echelon[lead];
  }
  return v;
}

}  // namespace

Vec::Vec(int n, std::uint32_t bits) : n_(n), bits_(bits) {
  check_dim(n);
  if (n < 32 && (bits >> n) != 0)
    throw ContractViolation("vector has bits set above its dimension");
}

Vec Vec::unit(int n, int i) {
  if (i < 0 || i >= n) throw ContractViolation("unit vector index out of range");
  return Vec(n, 1u << i);
}

int dot(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw ContractViolation("dot: dimension mismatch");
  return parity(a.bits() & b.bits());
}

std::string to_string(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.dim(); ++i) s.push_back(v[i] ? '1' : '0');
  return s;
}

Matrix::Matrix(int n) : n_(n) { check_dim(n); }

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.rows_[i] = 1u << i;
  return m;
}

Matrix Matrix::from_rows(int n, std::span<const std::uint32_t> rows) {
  if (static_cast<int>(rows.size()) != n) throw ContractViolation("from_rows: expected n rows");
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (n < 32 && (rows[i] >> n)) throw ContractViolation("from_rows: row wider than n");
    m.rows_[i] = rows[i];
  }
  return m;
}

Matrix Matrix::from_columns(int n, std::span<const std::uint32_t> cols) {
  if (static_cast<int>(cols.size()) != n)
    throw ContractViolation("from_columns: expected n columns");
  Matrix m(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if ((cols[j] >> i) & 1u) m.rows_[i] |= 1u << j;
  return m;
}

std::uint32_t Matrix::column(int j) const {
  std::uint32_t c = 0;
  for (int i = 0; i < n_; ++i) c |= ((rows_[i] >> j) & 1u) << i;
  return c;
}

void Matrix::set(int i, int j, bool value) {
  if (value)
    rows_[i] |= 1u << j;
  else
    rows_[i] &= ~(1u << j);
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (int j = 0; j < n_; ++j) t.rows_[j] = column(j);
  return t;
}

int Matrix::rank() const {
  std::array<std::uint32_t, kMaxDim> echelon{};
  int r = 0;
  for (int i = 0; i < n_; ++i) {
    std::uint32_t v = reduce(rows_[i], echelon);
    if (v) {
      echelon[31 - std::countl_zero(v)] = v;
      ++r;
    }
  }
  return r;
}

std::uint64_t Matrix::encoding() const {
  if (n_ > 8) throw ContractViolation("matrix encoding needs n <= 8");
  std::uint64_t code = 0;
  for (int i = 0; i < n_; ++i) code = (code << n_) | rows_[i];
  return code;
}

Vec mat_vec(const Matrix& m, const Vec& x) {
  if (m.dim() != x.dim()) throw ContractViolation("mat_vec: dimension mismatch");
  return Vec(m.dim(), m.apply(x.bits()));
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw ContractViolation("multiply: dimension mismatch");
  int n = a.dim();
  std::array<std::uint32_t, kMaxDim> cols{};
  // Column j of AB is A applied to column j of B.
  for (int j = 0; j < n; ++j) cols[j] = a.apply(b.column(j));
  return Matrix::from_columns(n, std::span(cols.data(), n));
}

std::optional<Matrix> inverse(const Matrix& m) {
  int n = m.dim();
  std::array<std::uint32_t, kMaxDim> left{}, right{};
  for (int i = 0; i < n; ++i) {
    left[i] = m.row(i);
    right[i] = 1u << i;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if ((left[i] >> col) & 1u) {
        pivot = i;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(left[col], left[pivot]);
    std::swap(right[col], right[pivot]);
    for (int i = 0; i < n; ++i)
      if (i != col && ((left[i] >> col) & 1u)) {
        left[i] ^= left[col];
        right[i] ^= right[col];
      }
  }
  return Matrix::from_rows(n, std::span(right.data(), n));
}

double gl_order_estimate(int n) {
  double order = 1.0;
  for (int i = 0; i < n; ++i) order *= std::ldexp(1.0, n) - std::ldexp(1.0, i);
  return order;
}

std::uint64_t gl_order(int n) {
  if (n > 8) throw ContractViolation("gl_order: exact value only for n <= 8");
  std::uint64_t order = 1;
  for (int i = 0; i < n; ++i) order *= (std::uint64_t{1} << n) - (std::uint64_t{1} << i);
  return order;
}

void check_gl_guard(int n, int guard) {
  if (n <= guard) return;
  std::ostringstream msg;
  msg.precision(3);
  msg << "refusing to sweep GL_" << n << "(F2): " << gl_order_estimate(n)
      << " matrices, each applied to " << (std::uint64_t{1} << n)
      << " points; guard is n <= " << guard;
  throw GuardRefusal(msg.str());
}

GLEnumerator::GLEnumerator(int n, int guard) : n_(n), current_(n) {
  check_dim(n);
  check_gl_guard(n, guard);
}

bool GLEnumerator::next(Matrix& out) {
  if (n_ == 0) {
    if (started_) return false;
    started_ = true;
    out = current_;
    ++produced_;
    return true;
  }
  const std::uint32_t last = (1u << n_) - 1u;
  int level;
  if (!started_) {
    started_ = true;
    level = 0;
    candidate_[0] = 0;
  } else {
    level = n_ - 1;
  }
  while (level >= 0) {
    if (candidate_[level] == last) {
      --level;
      continue;
    }
    std::uint32_t v = ++candidate_[level];
    std::uint32_t residue = reduce(v, echelon_[level]);
    if (!residue) continue;
    current_.set_row(level, v);
    echelon_[level + 1] = echelon_[level];
    echelon_[level + 1][31 - std::countl_zero(residue)] = residue;
    if (level == n_ - 1) {
      out = current_;
      ++produced_;
      return true;
    }
    ++level;
    candidate_[level] = 0;
  }
  return false;
}

void for_each_gl(int n, const std::function<bool(const Matrix&)>& visit, int guard) {
  GLEnumerator it(n, guard);
  Matrix m;
  while (it.next(m))
    if (!visit(m)) return;
}

std::vector<Matrix> enumerate_gl(int n, int guard) {
  std::vector<Matrix> all;
  for_each_gl(n, [&](const Matrix& m) {
    all.push_back(m);
    return true;
  }, guard);
  return all;
}

BasisExtension extend_to_basis(int n, std::span<const Vec> vectors) {
  check_dim(n);
  std::array<std::uint32_t, kMaxDim> echelon{};
  std::array<std::uint32_t, kMaxDim> basis{};
  BasisExtension out;
  int filled = 0;
  auto take = [&](std::uint32_t v) {
    std::uint32_t residue = reduce(v, echelon);
    if (!residue) return false;
    echelon[31 - std::countl_zero(residue)] = residue;
    basis[filled++] = v;
    return true;
  };
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != n) throw ContractViolation("extend_to_basis: arity mismatch");
    if (filled < n && take(vectors[i].bits())) out.selected.push_back(i);
  }
  out.rank = filled;
  for (int k = 0; k < n && filled < n; ++k) take(1u << k);
  // B has the chosen vectors as columns, so B e_j = b_j and B^{-1} b_j = e_j.
  Matrix b = Matrix::from_columns(n, std::span(basis.data(), n));
  auto r = inverse(b);
  if (!r) throw InvariantFault("extend_to_basis produced a singular basis");
  out.transform = *r;
  return out;
}

Matrix random_nonsingular(int n, std::mt19937_64& rng) {
  if (n < 1) throw ContractViolation("random_nonsingular: n must be >= 1");
  check_dim(n);
  const std::uint32_t mask = (1u << n) - 1u;
  std::array<std::uint32_t, kMaxDim> rows{};
  for (;;) {
    for (int i = 0; i < n; ++i) rows[i] = static_cast<std::uint32_t>(rng()) & mask;
    Matrix m = Matrix::from_rows(n, std::span(rows.data(), n));
    if (m.nonsingular()) return m;
  }
}

Matrix random_nonsingular(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_nonsingular(n, rng);
}

std::string to_text(const Matrix& m) {
  std::string s;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) s.push_back(m.at(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

Matrix parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = end + 1;
  }
  int n = static_cast<int>(lines.size());
  if (n == 0 || n > kMaxDim) throw ParseError(1, 1, "matrix must have 1.." + std::to_string(kMaxDim) + " rows");
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(lines[i].size()) != n)
      throw ParseError(i + 1, lines[i].size() + 1, "row length differs from row count");
    for (int j = 0; j < n; ++j) {
      char c = lines[i][j];
      if (c != '0' && c != '1') throw ParseError(i + 1, j + 1, "expected 0 or 1");
      m.set(i, j, c == '1');
    }
  }
  return m;
}

}  // namespace liniso::gf2
