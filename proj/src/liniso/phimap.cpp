#include "liniso/phimap.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "liniso/errors.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"

namespace liniso {

double binary_entropy(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw ContractViolation("entropy argument outside [0, 1]");
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(omega) + term(1.0 - omega);
}

BigInt hamming_ball_size(std::uint64_t length, std::uint64_t radius) {
  if (radius > length) throw ContractViolation("radius exceeds length");
  BigInt total = 0, binom;
  for (std::uint64_t i = 0; i <= radius; ++i) {
    mpz_bin_uiui(binom.get_mpz_t(), length, i);
    total += binom;
  }
  return total;
}

TableSet::TableSet(int r, bool full) : r_(r) {
  if (r < 0 || r > 5) throw ContractViolation("table sets cover at most 5 variables");
  std::uint64_t n = universe();
  bits_.assign((n + 63) / 64, full ? ~std::uint64_t{0} : 0);
  if (full && n < 64) bits_[0] = (std::uint64_t{1} << n) - 1;
}

void TableSet::erase_all(const TableSet& other) {
  if (other.r_ != r_) throw ContractViolation("table sets over different arities");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~other.bits_[i];
}

std::uint64_t TableSet::count() const {
  std::uint64_t c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

std::optional<std::uint64_t> TableSet::first(std::uint64_t from) const {
  for (std::size_t i = from >> 6; i < bits_.size(); ++i) {
    std::uint64_t w = bits_[i];
    if (i == (from >> 6)) w &= ~std::uint64_t{0} << (from & 63);
    if (w) return i * 64 + std::countr_zero(w);
  }
  return std::nullopt;
}

std::uint64_t table_index(const BooleanFunction& f) {
  if (f.arity() > 6) throw ContractViolation("table index needs arity <= 6");
  return f.words()[0];
}

BooleanFunction table_function(int r, std::uint64_t index) {
  return BooleanFunction::from_words(r, {index});
}

std::uint64_t ball_radius(int r, const Rational& omega) {
  if (sgn(omega) < 0) throw ContractViolation("omega must be non-negative");
  Rational scaled = omega * Rational(BigInt(1) << r);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  BigInt cap = BigInt(1) << r;
  return q > cap ? cap.get_ui() : q.get_ui();
}

namespace {

void check_ball_guard(int r, const Limits& limits) {
  if (r <= limits.ball_r) return;
  std::ostringstream msg;
  msg << "ball over " << r << " variables needs a bitset of 2^" << (std::uint64_t{1} << r)
      << " bits; guard is r <= " << limits.ball_r;
  throw GuardRefusal(msg.str());
}

// All masks over `length` bits of weight <= radius.
std::vector<std::uint64_t> low_weight_masks(int length, std::uint64_t radius) {
  std::vector<std::uint64_t> out{0};
  std::vector<std::uint64_t> frontier{0};
  for (std::uint64_t w = 1; w <= radius; ++w) {
    std::vector<std::uint64_t> next;
    for (auto m : frontier) {
      int top = m == 0 ? 0 : 64 - std::countl_zero(m);
      for (int b = top; b < length; ++b) next.push_back(m | (std::uint64_t{1} << b));
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TableSet liniso_ball(const BooleanFunction& f, const Rational& omega, const Limits& limits) {
  const int r = f.arity();
  check_ball_guard(r, limits);
  TableSet orbit(r);
  gf2::for_each_gl(r, [&](const gf2::Matrix& m) {
    orbit.insert(table_index(compose_linear(f, m)));
    return true;
  }, std::max(limits.gl_n, r));

  const auto masks = low_weight_masks(1 << r, ball_radius(r, omega));
  TableSet ball(r);
  for (auto t = orbit.first(); t; t = orbit.first(*t + 1))
    for (auto mask : masks) ball.insert(*t ^ mask);
  return ball;
}

std::optional<SizeChoice> choose_m(int n, const Rational& omega) {
  if (!(sgn(omega) > 0 && omega < Rational(1, 2)))
    throw ContractViolation("choose_m needs 0 < omega < 1/2");
  if (n < 0) throw ContractViolation("n must be non-negative");
  const double h = binary_entropy(to_double(omega));
  for (int ell = 0; ell <= 32; ++ell) {
    double m = std::ldexp(1.0, ell);
    if (m - double(ell) * ell - h * m >= n)
      return SizeChoice{ell, std::uint64_t{1} << ell};
  }
  return std::nullopt;
}

PhiConstruction construct_phi(int n, int ell, const Rational& omega, const Limits& limits) {
  if (n < 0 || n > 24) throw ContractViolation("construct_phi needs 0 <= n <= 24");
  if (ell < 0) throw ContractViolation("ell must be non-negative");
  check_ball_guard(ell, limits);

  PhiConstruction out;
  out.map.n = n;
  out.map.ell = ell;
  out.map.m = std::uint64_t{1} << ell;
  out.map.omega = omega;

  TableSet remaining(ell, true);
  const std::uint64_t sources = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < sources; ++x) {
    auto y = remaining.first();
    if (!y) break;
    BooleanFunction fy = table_function(ell, *y);
    out.map.tables.push_back(fy);
    remaining.erase_all(liniso_ball(fy, omega, limits));
    ++out.assigned;
  }
  out.success = out.assigned == sources;
  out.remaining = remaining.count();
  return out;
}

PhiReport verify_phi(const PhiMap& phi, const Limits& limits) {
  gf2::check_gl_guard(phi.ell, limits.gl_n);
  PhiReport rep;
  const std::uint64_t k = phi.tables.size();
  for (std::uint64_t a = 0; a < k; ++a)
    for (std::uint64_t b = a + 1; b < k; ++b) {
      ++rep.pairs;
      if (phi.tables[a] == phi.tables[b]) rep.injective = false;
      Rational d = linear_distance(phi.tables[a], phi.tables[b], limits).value();
      if (!rep.min_distance || d < *rep.min_distance) {
        rep.min_distance = d;
        rep.witness_a = a;
        rep.witness_b = b;
      }
    }
  rep.pass = rep.injective && (!rep.min_distance || *rep.min_distance >= phi.omega);
  return rep;
}

LinIsoOracle exact_oracle(const Limits& limits) {
  return [limits](const BooleanFunction& f, const BooleanFunction& g) {
    return linear_distance(f, g, limits).mismatches == 0;
  };
}

namespace {

PromiseInstance zero_epsilon(const BooleanFunction& f, const BooleanFunction& g,
                             const Rational& omega) {
  PromiseInstance inst;
  inst.f = f;
  inst.g = g;
  inst.epsilon = 0;
  inst.omega = omega;
  return inst;
}

}  // namespace

LinIsoOracle deterministic_oracle(const Rational& omega, const ProtocolOptions& options) {
  return [=](const BooleanFunction& f, const BooleanFunction& g) {
    return run_deterministic(zero_epsilon(f, g, omega), options).outcome == Outcome::Accept;
  };
}

LinIsoOracle private_coin_oracle(const Rational& omega, std::uint64_t seed,
                                 const ProtocolOptions& options) {
  return [=](const BooleanFunction& f, const BooleanFunction& g) {
    return run_private_coin(zero_epsilon(f, g, omega), seed, seed ^ 0x9e3779b97f4a7c15ull, options)
               .outcome == Outcome::Accept;
  };
}

LinIsoOracle public_coin_oracle(const Rational& omega, std::uint64_t seed, int rounds,
                                const ProtocolOptions& options) {
  return [=](const BooleanFunction& f, const BooleanFunction& g) {
    return run_public_coin(zero_epsilon(f, g, omega), seed, rounds, options).outcome ==
           Outcome::Accept;
  };
}

bool reduce_equ(std::uint64_t a, std::uint64_t b, const PhiMap& phi, const LinIsoOracle& oracle) {
  if (a >= phi.tables.size() || b >= phi.tables.size())
    throw ContractViolation("input outside the map's domain");
  return oracle(phi.tables[a], phi.tables[b]);
}

}  // namespace liniso
