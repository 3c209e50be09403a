#include "liniso/lindist.hpp"

#include <array>
#include <bit>

#include "liniso/errors.hpp"

namespace liniso {

namespace {

void check_pair(const BooleanFunction& f, const BooleanFunction& g, const Limits& limits) {
  if (f.arity() != g.arity()) throw ContractViolation("linear distance: arity mismatch");
  gf2::check_gl_guard(f.arity(), limits.gl_n);
}

// Reusable scratch for computing f o M across a GL sweep.
class Composer {
 public:
  explicit Composer(const BooleanFunction& f) : f_(f), img_(f.size(), 0), out_(f.arity()) {}

  const BooleanFunction& apply(const gf2::Matrix& m) {
    std::array<std::uint32_t, gf2::kMaxDim> cols{};
    for (int j = 0; j < m.dim(); ++j) cols[j] = m.column(j);
    for (std::size_t x = 1; x < img_.size(); ++x)
      img_[x] = img_[x & (x - 1)] ^ cols[std::countr_zero(x)];
    for (std::uint64_t x = 0; x < out_.size(); ++x) out_.set_bit(x, f_.bit(img_[x]));
    return out_;
  }

 private:
  const BooleanFunction& f_;
  std::vector<std::uint32_t> img_;
  BooleanFunction out_;
};

}  // namespace

LinDistResult linear_distance(const BooleanFunction& f, const BooleanFunction& g,
                              const Limits& limits) {
  check_pair(f, g, limits);
  const int n = f.arity();
  LinDistResult best{n, f.size() + 1, gf2::Matrix::identity(n)};
  Composer compose(f);
  gf2::for_each_gl(n, [&](const gf2::Matrix& m) {
    std::uint64_t d = mismatches(compose.apply(m), g);
    if (d < best.mismatches) {
      best.mismatches = d;
      best.witness = m;
    }
    return d != 0;
  }, limits.gl_n);
  return best;
}

AffineDistResult affine_distance(const BooleanFunction& f, const BooleanFunction& g,
                                 const Limits& limits) {
  check_pair(f, g, limits);
  const int n = f.arity();
  const std::uint64_t N = f.size();
  AffineDistResult best{n, N + 1, gf2::Matrix::identity(n), gf2::Vec(n, 0)};
  Composer compose(f);
  gf2::for_each_gl(n, [&](const gf2::Matrix& m) {
    const BooleanFunction& h = compose.apply(m);
    // f(Mx + a) = h(x + b) with a = Mb.
    for (std::uint64_t b = 0; b < N; ++b) {
      std::uint64_t d = 0;
      for (std::uint64_t x = 0; x < N && d < best.mismatches; ++x) d += h.bit(x ^ b) != g.bit(x);
      if (d < best.mismatches) {
        best.mismatches = d;
        best.witness = m;
        best.shift = gf2::Vec(n, m.apply(static_cast<std::uint32_t>(b)));
        if (d == 0) return false;
      }
    }
    return true;
  }, limits.gl_n);
  return best;
}

bool is_lin_isomorphic(const BooleanFunction& f, const BooleanFunction& g, const Limits& limits) {
  check_pair(f, g, limits);
  if (f.weight() != g.weight()) return false;
  bool found = false;
  Composer compose(f);
  gf2::for_each_gl(f.arity(), [&](const gf2::Matrix& m) {
    found = compose.apply(m) == g;
    return !found;
  }, limits.gl_n);
  return found;
}

CanonicalForm canonical_form(const BooleanFunction& f, const Limits& limits) {
  gf2::check_gl_guard(f.arity(), limits.gl_n);
  CanonicalForm best{f, gf2::Matrix::identity(f.arity())};
  bool first = true;
  Composer compose(f);
  gf2::for_each_gl(f.arity(), [&](const gf2::Matrix& m) {
    const BooleanFunction& h = compose.apply(m);
    if (first || lex_less(h, best.function)) {
      best.function = h;
      best.witness = m;
      first = false;
    }
    return true;
  }, limits.gl_n);
  return best;
}

}  // namespace liniso
