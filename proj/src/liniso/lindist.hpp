#pragma once

#include <cstdint>

#include "liniso/boolfn.hpp"
#include "liniso/config.hpp"
#include "liniso/gf2.hpp"
#include "liniso/rational.hpp"

namespace liniso {

struct LinDistResult {
  int n = 0;
  std::uint64_t mismatches = 0;  // at the witness
  gf2::Matrix witness;           // first minimiser in GL enumeration order

  Rational value() const { return dyadic(static_cast<std::int64_t>(mismatches), n); }
};

// min over M in GL_n(F2) of Pr_x[f(Mx) != g(x)], exhaustively.
LinDistResult linear_distance(const BooleanFunction& f, const BooleanFunction& g,
                              const Limits& limits = {});

struct AffineDistResult {
  int n = 0;
  std::uint64_t mismatches = 0;
  gf2::Matrix witness;
  gf2::Vec shift;

  Rational value() const { return dyadic(static_cast<std::int64_t>(mismatches), n); }
};

// min over (M, a) of Pr_x[f(Mx + a) != g(x)].
AffineDistResult affine_distance(const BooleanFunction& f, const BooleanFunction& g,
                                 const Limits& limits = {});

bool is_lin_isomorphic(const BooleanFunction& f, const BooleanFunction& g,
                       const Limits& limits = {});

struct CanonicalForm {
  BooleanFunction function;  // f o witness, lexicographically minimal in the orbit
  gf2::Matrix witness;
};

CanonicalForm canonical_form(const BooleanFunction& f, const Limits& limits = {});

}  // namespace liniso
