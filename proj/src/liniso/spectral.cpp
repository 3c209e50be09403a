#include "liniso/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "liniso/errors.hpp"
#include "liniso/simplex.hpp"

namespace liniso {

namespace {

template <class T>
T from_rational(const Rational& r);
template <>
Rational from_rational<Rational>(const Rational& r) { return r; }
template <>
double from_rational<double>(const Rational& r) { return r.get_d(); }

Rational to_rational(const Rational& r) { return r; }
Rational to_rational(double d) { return Rational(d); }

// Variables: u_alpha, v_alpha (g_hat = u - v), then an upper slack and a lower
// surplus per point. Rows: upper constraints for every x, then lower ones.
template <class T>
ApproxNormWitness solve_lp(const BooleanFunction& f, const Rational& gamma, const LpOptions& lp) {
  const std::size_t N = f.size();
  const std::size_t vars = 4 * N;
  std::vector<std::vector<T>> a(2 * N, std::vector<T>(vars, T(0)));
  std::vector<T> b(2 * N);
  std::vector<int> basis(2 * N, -1);
  for (std::size_t x = 0; x < N; ++x) {
    Rational fx(f(x));
    Rational upper = fx + gamma;
    Rational lower = fx - gamma;
    int su = sgn(upper) < 0 ? -1 : 1;
    int sl = sgn(lower) < 0 ? -1 : 1;
    for (std::size_t alpha = 0; alpha < N; ++alpha) {
      int chi = gf2::parity(static_cast<std::uint32_t>(alpha & x)) ? -1 : 1;
      a[x][alpha] = T(su * chi);
      a[x][N + alpha] = T(-su * chi);
      a[N + x][alpha] = T(sl * chi);
      a[N + x][N + alpha] = T(-sl * chi);
    }
    a[x][2 * N + x] = T(su);
    a[N + x][3 * N + x] = T(-sl);
    b[x] = from_rational<T>(su > 0 ? upper : Rational(-upper));
    b[N + x] = from_rational<T>(sl > 0 ? lower : Rational(-lower));
    if (su > 0) basis[x] = static_cast<int>(2 * N + x);
    if (sl < 0) basis[N + x] = static_cast<int>(3 * N + x);
  }
  std::vector<T> c(vars, T(0));
  for (std::size_t j = 0; j < 2 * N; ++j) c[j] = T(1);

  detail::DenseSimplex<T> simplex(std::move(a), std::move(b), std::move(c), std::move(basis),
                                  lp.tolerance, lp.max_pivots);
  auto result = simplex.solve();

  ApproxNormWitness w;
  w.gamma = gamma;
  w.exact = std::is_same_v<T, Rational>;
  w.pivots = result.pivots;
  w.spectrum.n = f.arity();
  w.spectrum.coeffs.resize(N);
  for (std::size_t alpha = 0; alpha < N; ++alpha) {
    T coeff = result.z[alpha] - result.z[N + alpha];
    if (detail::FieldTraits<T>::sign(coeff, lp.tolerance) == 0) coeff = T(0);
    w.spectrum.coeffs[alpha] = to_rational(coeff);
  }
  w.value = 0;
  for (const auto& v : w.spectrum.coeffs) w.value += abs(v);
  if (w.exact && w.value != to_rational(result.objective))
    throw InvariantFault("LP objective disagrees with the recovered spectrum");
  w.witness = inverse_wht(w.spectrum);

  Rational slack = gamma + Rational(lp.tolerance);
  for (std::size_t x = 0; x < N; ++x) {
    Rational gap = abs(Rational(f(x)) - w.witness.values[x]);
    if (w.exact ? gap > gamma : gap > slack)
      throw LpFailure("LP witness violates |f - g| <= gamma at x = " + std::to_string(x));
  }
  return w;
}

BooleanFunction sign_of_counts(int n, std::vector<std::int64_t> counts) {
  // counts[alpha] -> sum_alpha counts[alpha] chi_alpha(x) for every x.
  for (std::size_t h = 1; h < counts.size(); h <<= 1)
    for (std::size_t i = 0; i < counts.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        auto u = counts[j];
        auto v = counts[j + h];
        counts[j] = u + v;
        counts[j + h] = u - v;
      }
  BooleanFunction F(n);
  for (std::uint64_t x = 0; x < F.size(); ++x) F.set_bit(x, counts[x] < 0);
  return F;
}

}  // namespace

Rational spectral_norm(const Spectrum& s) {
  Rational sum = 0;
  for (const auto& c : s.coeffs) sum += abs(c);
  return sum;
}

Rational spectral_norm(const BooleanFunction& f) {
  std::int64_t total = 0;
  for (auto v : wht_integer(f)) total += v < 0 ? -v : v;
  return dyadic(total, f.arity());
}

std::int64_t ApproxNormWitness::ceiling() const {
  if (exact) return liniso::ceil(value).get_si();
  return snapped_ceil(value.get_d());
}

ApproxNormWitness approx_spectral_norm(const BooleanFunction& f, const Rational& gamma,
                                       const Limits& limits, const LpOptions& lp) {
  if (sgn(gamma) < 0 || gamma >= 1) throw ContractViolation("approx_spectral_norm: need 0 <= gamma < 1");
  if (f.arity() > limits.lp_n)
    throw GuardRefusal("approximate spectral norm LP on n = " + std::to_string(f.arity()) +
                       " has " + std::to_string(4 * f.size()) + " variables and " +
                       std::to_string(2 * f.size()) + " rows; guard is n <= " +
                       std::to_string(limits.lp_n));
  if (f.arity() <= lp.exact_max_n) return solve_lp<Rational>(f, gamma, lp);
  return solve_lp<double>(f, gamma, lp);
}

BooleanFunction SampledSignRepresentation::evaluate() const {
  std::vector<std::int64_t> counts(std::size_t{1} << n, 0);
  for (const auto& s : samples) counts[s.alpha.bits()] += s.sign;
  return sign_of_counts(n, std::move(counts));
}

std::vector<gf2::Vec> SampledSignRepresentation::support() const {
  std::vector<gf2::Vec> out;
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (const auto& s : samples)
    if (!seen[s.alpha.bits()]) {
      seen[s.alpha.bits()] = true;
      out.push_back(s.alpha);
    }
  return out;
}

std::uint64_t sampler_size(double h_norm, double gamma, double target_delta, double constant) {
  double beta = (1.0 - gamma) / 10.0;
  double t = constant * h_norm * h_norm * std::log(1.0 / target_delta) / (beta * beta);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t)));
}

SamplingResult bs_sample(const BooleanFunction& f, const ApproxNormWitness& h,
                         const Rational& target_delta, std::uint64_t seed,
                         const SamplerOptions& options) {
  if (sgn(target_delta) <= 0 || target_delta >= 1)
    throw ContractViolation("bs_sample: need 0 < delta < 1");
  if (h.spectrum.n != f.arity()) throw ContractViolation("bs_sample: witness arity mismatch");
  const int n = f.arity();
  const std::size_t N = f.size();

  std::vector<double> weights(N);
  for (std::size_t a = 0; a < N; ++a) weights[a] = std::fabs(h.spectrum.coeffs[a].get_d());

  SamplingResult out;
  out.h_norm = h.value;
  out.beta = (1.0 - h.gamma.get_d()) / 10.0;
  out.sample_count = sampler_size(h.value.get_d(), h.gamma.get_d(), target_delta.get_d(),
                                  options.constant);
  const Rational budget = target_delta * Rational(static_cast<long>(N));

  std::uint64_t best = N + 1;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());

    SampledSignRepresentation rep{n, {}};
    rep.samples.reserve(out.sample_count);
    std::vector<std::int64_t> counts(N, 0);
    for (std::uint64_t i = 0; i < out.sample_count; ++i) {
      std::size_t a = draw(rng);
      int s = sgn(h.spectrum.coeffs[a]) < 0 ? -1 : 1;
      rep.samples.push_back({gf2::Vec(n, static_cast<std::uint32_t>(a)), s});
      counts[a] += s;
    }
    BooleanFunction F = sign_of_counts(n, std::move(counts));
    std::uint64_t miss = mismatches(f, F);
    best = std::min(best, miss);
    if (Rational(static_cast<long>(miss)) <= budget) {
      out.representation = std::move(rep);
      out.attempts = attempt + 1;
      out.achieved_distance = dyadic(static_cast<std::int64_t>(miss), n);
      return out;
    }
  }
  throw SamplerFailure("spectral sampler missed delta = " + to_string(target_delta) + " in " +
                           std::to_string(options.max_attempts) + " attempts of T = " +
                           std::to_string(out.sample_count) + "; best distance " +
                           to_string(dyadic(static_cast<std::int64_t>(best), n)) +
                           " (sampler constant too small for this instance)",
                       dyadic(static_cast<std::int64_t>(best), n).get_d());
}

SamplingResult bs_sample(const BooleanFunction& f, const Rational& gamma,
                         const Rational& target_delta, std::uint64_t seed,
                         const SamplerOptions& options, const Limits& limits,
                         const LpOptions& lp) {
  return bs_sample(f, approx_spectral_norm(f, gamma, limits, lp), target_delta, seed, options);
}

Truncation truncate_spectrum(const Spectrum& s, const Rational& threshold) {
  if (sgn(threshold) < 0) throw ContractViolation("truncate_spectrum: negative threshold");
  Truncation t;
  t.kept.n = s.n;
  t.kept.coeffs.assign(s.coeffs.size(), Rational(0));
  for (std::size_t a = 0; a < s.coeffs.size(); ++a)
    if (abs(s.coeffs[a]) >= threshold && sgn(s.coeffs[a]) != 0) {
      t.kept.coeffs[a] = s.coeffs[a];
      t.support.emplace_back(s.n, static_cast<std::uint32_t>(a));
    }
  t.function = inverse_wht(t.kept);
  return t;
}

Truncation truncate_spectrum(const RealFunction& h, const Rational& threshold,
                             const Limits& limits) {
  return truncate_spectrum(wht(h, limits), threshold);
}

BooleanFunction JuntaApproximation::lifted() const { return lift(core, approximant.arity()); }

JuntaApproximation junta_approximation(const BooleanFunction& f, const ApproxNormWitness& h,
                                       const Rational& omega) {
  if (sgn(omega) <= 0 || omega >= 1) throw ContractViolation("junta_approximation: need 0 < omega < 1");
  if (h.spectrum.n != f.arity()) throw ContractViolation("junta_approximation: witness arity mismatch");
  const int n = f.arity();
  JuntaApproximation j;
  j.t = h.value;
  j.threshold = omega / (Rational(18) * j.t);
  Truncation trunc = truncate_spectrum(h.spectrum, j.threshold);
  j.significant = trunc.support;

  gf2::BasisExtension ext = gf2::extend_to_basis(n, j.significant);
  j.r = ext.rank;
  j.transform = ext.transform.transpose();

  // sign of sum_{alpha in S} h_hat(alpha) chi_{R alpha}(y) on the first r coordinates.
  RealFunction moved{j.r, std::vector<Rational>(std::size_t{1} << j.r, Rational(0))};
  for (const auto& alpha : j.significant) {
    std::uint32_t beta = ext.transform.apply(alpha.bits());
    if (j.r < 32 && (beta >> j.r)) throw InvariantFault("rotated character left span{e_1..e_r}");
    const Rational& c = trunc.kept.coeffs[alpha.bits()];
    for (std::size_t y = 0; y < moved.values.size(); ++y) {
      if (gf2::parity(beta & static_cast<std::uint32_t>(y)))
        moved.values[y] -= c;
      else
        moved.values[y] += c;
    }
  }
  j.core = sign_of(moved);
  j.approximant = sign_of(trunc.function);
  j.pointwise_distance = distance(f, j.approximant);

  if (compose_linear(j.approximant, j.transform) != j.lifted())
    throw InvariantFault("junta core disagrees with the rotated truncation");
  Rational k_bound = Rational(576) * j.t * j.t / (omega * omega);
  if (j.r > static_cast<int>(j.significant.size()) ||
      Rational(static_cast<long>(j.significant.size())) > k_bound)
    throw InvariantFault("junta support exceeds 576 t^2 / omega^2");
  if (j.pointwise_distance >= omega / 8)
    throw InvariantFault("junta approximant is not within omega/8 of f");
  return j;
}

JuntaApproximation junta_approximation(const BooleanFunction& f, const Rational& omega,
                                       const Limits& limits, const LpOptions& lp) {
  return junta_approximation(f, approx_spectral_norm(f, Rational(1, 3), limits, lp), omega);
}

}  // namespace liniso
