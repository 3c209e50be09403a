#pragma once

#include <cstdint>
#include <vector>

#include "liniso/boolfn.hpp"
#include "liniso/config.hpp"
#include "liniso/gf2.hpp"
#include "liniso/rational.hpp"

namespace liniso {

// sum_alpha |f_hat(alpha)|, exact.
Rational spectral_norm(const Spectrum& s);
Rational spectral_norm(const BooleanFunction& f);

struct LpOptions {
  int exact_max_n = 4;         // rational simplex up to here, doubles above
  double tolerance = 1e-9;     // floating feasibility / optimality tolerance
  std::size_t max_pivots = 200000;
};

// Optimum of min ||g_hat||_1 subject to |f(x) - g(x)| <= gamma for all x.
struct ApproxNormWitness {
  Rational gamma;
  Rational value;          // exact optimum, or the floating optimum converted exactly
  bool exact = true;
  Spectrum spectrum;       // g_hat
  RealFunction witness;    // g
  std::size_t pivots = 0;

  // Ceiling of value; floating values within 1e-6 of an integer snap to it.
  std::int64_t ceiling() const;
};

ApproxNormWitness approx_spectral_norm(const BooleanFunction& f, const Rational& gamma,
                                       const Limits& limits = {}, const LpOptions& lp = {});

struct SignedCharacter {
  gf2::Vec alpha;
  int sign = 1;
  friend bool operator==(const SignedCharacter&, const SignedCharacter&) = default;
};

// Multiset of signed characters; F(x) = sign(sum a chi_alpha(x)) with sign(0) = +1.
struct SampledSignRepresentation {
  int n = 0;
  std::vector<SignedCharacter> samples;

  BooleanFunction evaluate() const;
  // Distinct characters in order of first appearance.
  std::vector<gf2::Vec> support() const;
};

struct SamplerOptions {
  double constant = 8.0;  // C in T = ceil(C ||h_hat||^2 ln(1/delta) / beta^2)
  int max_attempts = 64;
};

struct SamplingResult {
  SampledSignRepresentation representation;
  std::uint64_t sample_count = 0;  // T
  double beta = 0;
  int attempts = 0;
  Rational achieved_distance;      // delta(f, F), exact
  Rational h_norm;                 // ||h_hat||_1 of the LP optimum used
};

// Sample count for the given optimum value, gamma and target delta.
std::uint64_t sampler_size(double h_norm, double gamma, double target_delta, double constant);

SamplingResult bs_sample(const BooleanFunction& f, const ApproxNormWitness& h,
                         const Rational& target_delta, std::uint64_t seed,
                         const SamplerOptions& options = {});
SamplingResult bs_sample(const BooleanFunction& f, const Rational& gamma,
                         const Rational& target_delta, std::uint64_t seed,
                         const SamplerOptions& options = {}, const Limits& limits = {},
                         const LpOptions& lp = {});

struct Truncation {
  RealFunction function;
  Spectrum kept;
  std::vector<gf2::Vec> support;  // ascending alpha
};

// Keeps coefficients with |h_hat(alpha)| >= threshold.
Truncation truncate_spectrum(const Spectrum& s, const Rational& threshold);
Truncation truncate_spectrum(const RealFunction& h, const Rational& threshold,
                             const Limits& limits = {});

struct JuntaApproximation {
  int r = 0;
  BooleanFunction core;        // on r variables
  gf2::Matrix transform;       // A, nonsingular; A^T alpha_i = e_i
  Rational threshold;          // omega / (18 t)
  Rational t;                  // ||f_hat||_{1,1/3}
  std::vector<gf2::Vec> significant;  // S
  BooleanFunction approximant;        // sign of the truncated optimum, on n variables
  Rational pointwise_distance;        // delta(f, approximant)

  // core read from the first r coordinates; equals approximant composed with A.
  BooleanFunction lifted() const;
};

JuntaApproximation junta_approximation(const BooleanFunction& f, const Rational& omega,
                                       const Limits& limits = {}, const LpOptions& lp = {});
JuntaApproximation junta_approximation(const BooleanFunction& f, const ApproxNormWitness& h,
                                       const Rational& omega);

}  // namespace liniso
