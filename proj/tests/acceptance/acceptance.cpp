// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liniso/bits.hpp"
#include "liniso/boolfn.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"
#include "liniso/phimap.hpp"
#include "liniso/protocol.hpp"
#include "liniso/spectral.hpp"
#include "support/oracle.hpp"

using namespace liniso;

namespace {

// Collects failed checks for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failed_) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }
  void note(const std::string& n) { notes_ += (notes_.empty() ? "" : "; ") + n; }
  const std::string& notes() const { return notes_; }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void(Check&)> body;
};

std::string str(const Rational& r) { return to_string(r); }

BooleanFunction fam(const char* spec, int n, std::uint64_t seed) {
  return generate(Family::parse(spec), n, seed);
}

// 50 planted 2-juntas on 4 variables shared by the sampling and junta criteria.
std::vector<BooleanFunction> junta_instances() {
  std::vector<BooleanFunction> out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) out.push_back(fam("planted-junta:2", 4, 1000 + seed));
  return out;
}

PromiseInstance near_pair(int n, std::mt19937_64& rng) {
  PromiseInstance p;
  p.f = generate(Family::parse("planted-junta:2"), n, rng);
  p.g = compose_linear(p.f, gf2::random_nonsingular(n, rng));
  p.ground_truth = GroundTruth::Near;
  return p;
}

PromiseInstance far_pair(int n, const Rational& omega, std::mt19937_64& rng) {
  PromiseInstance p;
  p.omega = omega;
  p.f = generate(Family::parse("planted-junta:2"), n, rng);
  do p.g = generate(Family::parse("uniform-random"), n, rng);
  while (linear_distance(p.f, p.g).value() < omega);
  p.ground_truth = GroundTruth::Far;
  return p;
}

void exact_spectral_values(Check& c) {
  BooleanFunction and2 = fam("and-all", 2, 0), bent = fam("bent-ip", 4, 0);
  auto start = std::chrono::steady_clock::now();
  Rational a = spectral_norm(and2), b = spectral_norm(bent);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  c.expect(a == 2, "AND2 norm " + str(a));
  c.expect(b == 4, "bent norm " + str(b));
  c.expect(ms < 1.0, "computation took " + std::to_string(ms) + " ms");
  c.note("AND2=" + str(a) + " bent-ip(4)=" + str(b));
}

void lp_correctness(Check& c) {
  for (int n = 2; n <= 4; ++n)
    for (std::uint32_t alpha = 1; alpha < (1u << n); ++alpha)
      for (auto gamma : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        auto w = approx_spectral_norm(fam(("parity:" + std::to_string(alpha)).c_str(), n, 0), gamma);
        c.expect(std::fabs(to_double(w.value) - to_double(1 - gamma)) <= 1e-6,
                 "chi n=" + std::to_string(n) + " gamma=" + str(gamma) + " got " + str(w.value));
      }
  std::mt19937_64 rng(2);
  const Rational gammas[] = {0, Rational(1, 4), Rational(1, 3), Rational(1, 2)};
  for (int i = 0; i < 50; ++i) {
    BooleanFunction f = oracle::random_function(4, rng);
    Rational norm = spectral_norm(f);
    Rational prev = norm;
    for (const auto& gamma : gammas) {
      Rational v = approx_spectral_norm(f, gamma).value;
      if (sgn(gamma) == 0) c.expect(v == norm, "gamma=0 mismatch " + str(v) + " vs " + str(norm));
      c.expect(1 - gamma <= v && v <= norm, "sandwich at gamma=" + str(gamma));
      c.expect(v <= prev, "monotonicity at gamma=" + str(gamma));
      prev = v;
    }
  }
}

void fourier_suite(Check& c) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + i % 7;
    BooleanFunction f = oracle::random_function(n, rng);
    Spectrum s = wht(f);
    c.expect(sign_of(inverse_wht(s)) == f && inverse_wht(s).values == to_real(f).values,
             "roundtrip n=" + std::to_string(n));
    Rational sum = 0;
    for (const auto& x : s.coeffs) sum += x * x;
    c.expect(sum == 1, "Parseval n=" + std::to_string(n) + " got " + str(sum));
  }
}

void group_facts(Check& c) {
  for (int n = 1; n <= 4; ++n) {
    std::uint64_t formula = 1;
    for (int i = 0; i < n; ++i) formula *= (1ull << n) - (1ull << i);
    c.expect(gf2::enumerate_gl(n).size() == formula, "|GL_" + std::to_string(n) + "|");
  }
  c.expect(gf2::enumerate_gl(4).size() == 20160, "|GL_4| = 20160");
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    BooleanFunction f = oracle::random_function(3, rng), g = oracle::random_function(3, rng),
                    h = oracle::random_function(3, rng);
    gf2::Matrix m = gf2::random_nonsingular(3, rng);
    Rational fg = linear_distance(f, g).value();
    c.expect(fg == linear_distance(g, f).value(), "symmetry");
    c.expect(fg == linear_distance(compose_linear(f, m), g).value(), "left invariance");
    c.expect(fg == linear_distance(f, compose_linear(g, m)).value(), "right invariance");
    c.expect(fg <= linear_distance(f, h).value() + linear_distance(h, g).value(), "triangle");
  }
}

void canonical_soundness(Check& c) {
  std::mt19937_64 rng(5);
  int iso = 0;
  for (int i = 0; i < 100; ++i) {
    int n = 1 + i % 3;
    BooleanFunction f = oracle::random_function(n, rng);
    // Half the pairs are isomorphic by construction so both directions are exercised.
    BooleanFunction g = i % 2 ? compose_linear(f, gf2::random_nonsingular(n, rng))
                              : oracle::random_function(n, rng);
    bool same = canonical_form(f).function == canonical_form(g).function;
    bool isomorphic = is_lin_isomorphic(f, g);
    iso += isomorphic;
    c.expect(same == isomorphic, "pair " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    BooleanFunction f = oracle::random_function(4, rng);
    gf2::Matrix m = gf2::random_nonsingular(4, rng);
    c.expect(canonical_form(f).function == canonical_form(compose_linear(f, m)).function,
             "orbit invariance " + std::to_string(i));
  }
  c.note(std::to_string(iso) + "/100 pairs isomorphic");
}

void sampling_certificate(Check& c) {
  const Rational omega(1, 4), gamma(1, 3), delta = omega / 4;
  const double beta = (1 - to_double(gamma)) / 10;
  std::size_t worst_support = 0;
  std::uint64_t seed = 0;
  for (const auto& f : junta_instances()) {
    auto w = approx_spectral_norm(f, gamma);
    auto r = bs_sample(f, w, delta, ++seed);
    double t = to_double(w.value);
    double bound = 8 * t * t * std::log(4 / to_double(omega)) / (beta * beta);
    std::size_t support = r.representation.support().size();
    worst_support = std::max(worst_support, support);
    c.expect(r.achieved_distance <= delta, "distance " + str(r.achieved_distance));
    c.expect(r.achieved_distance == distance(f, r.representation.evaluate()), "certificate");
    c.expect(double(support) <= bound, "support bound");
    c.expect(double(r.sample_count) <= std::ceil(bound), "sample count bound");
  }
  c.note("largest |S| = " + std::to_string(worst_support));
}

void junta_approximation_check(Check& c) {
  const Rational omega(1, 4);
  int worst_r = 0;
  for (const auto& f : junta_instances()) {
    auto j = junta_approximation(f, omega);
    worst_r = std::max(worst_r, j.r);
    c.expect(Rational(j.r) <= 576 * j.t * j.t / (omega * omega), "r bound");
    Rational d = linear_distance(f, j.lifted()).value();
    c.expect(d < omega / 8, "delta_L " + str(d));
  }
  c.note("largest r = " + std::to_string(worst_r));
}

std::uint64_t deterministic_wire_bits(const Transcript& t) {
  auto ca = t.stats["ceiling_alice"].get<std::uint64_t>();
  auto ell = t.stats["ell"].get<std::uint64_t>();
  auto T = t.stats["T"].get<std::uint64_t>();
  return gamma_length(ca) + 1 + gamma_length(ell) + gamma_length(T) + T * (ell + 1);
}

void deterministic_end_to_end(Check& c) {
  std::mt19937_64 rng(8);
  const Rational omega(1, 4);
  std::uint64_t max_bits = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 3 + i % 2;
    PromiseInstance p = i < 100 ? near_pair(n, rng) : far_pair(n, omega, rng);
    Transcript t = run_deterministic(p);
    Outcome want = p.ground_truth == GroundTruth::Near ? Outcome::Accept : Outcome::Reject;
    c.expect(t.valid && t.outcome == want, std::string(to_string(p.ground_truth)) + " instance " +
                                               std::to_string(i) + " got " + to_string(t.outcome));
    c.expect(t.total_bits == deterministic_wire_bits(t), "bit count " + std::to_string(i));
    max_bits = std::max(max_bits, t.total_bits);
  }
  c.note("max transcript " + std::to_string(max_bits) + " bits");
}

void private_coin_end_to_end(Check& c) {
  std::mt19937_64 rng(9);
  const Rational omega(1, 4);
  const std::uint64_t seeds[3][2] = {{1, 2}, {3, 4}, {5, 6}};
  for (int i = 0; i < 100; ++i) {
    PromiseInstance p = near_pair(3, rng);
    for (const auto& s : seeds) {
      Transcript t = run_private_coin(p, s[0] + 10 * i, s[1] + 10 * i);
      c.expect(t.valid && t.outcome == Outcome::Accept, "completeness pair " + std::to_string(i));
    }
  }
  int rejects = 0;
  for (int i = 0; i < 300; ++i) {
    PromiseInstance p = far_pair(3, omega, rng);
    Transcript t = run_private_coin(p, rng(), rng());
    rejects += t.outcome == Outcome::Reject;
    if (t.stats.contains("round_bits")) {
      auto r = t.stats["r"].get<std::uint64_t>();
      c.expect(t.stats["round_bits"].get<std::uint64_t>() == r + 2, "round cost");
      // Sampling rounds start after the four setup messages.
      for (std::size_t k = 4; k + 1 < t.messages.size(); k += 2)
        c.expect(t.messages[k].bits.size() + t.messages[k + 1].bits.size() == r + 2,
                 "round " + std::to_string(k) + " cost");
    }
  }
  c.expect(rejects * 3 >= 300 * 2, "soundness " + std::to_string(rejects) + "/300");
  c.note("far reject rate " + std::to_string(rejects) + "/300");
}

void public_coin_end_to_end(Check& c) {
  std::mt19937_64 rng(10);
  const Rational omega(1, 4);
  int rejects = 0;
  for (int i = 0; i < 200; ++i) {
    Transcript near = run_public_coin(near_pair(3, rng), rng(), 7);
    c.expect(near.outcome == Outcome::Accept, "completeness " + std::to_string(i));
    c.expect(near.total_bits == 8, "near bits");
    Transcript far = run_public_coin(far_pair(3, omega, rng), rng(), 7);
    rejects += far.outcome == Outcome::Reject;
    c.expect(far.total_bits == 8, "far bits");
  }
  c.expect(rejects >= 198, "reject rate " + std::to_string(rejects) + "/200");
  c.note("far reject rate " + std::to_string(rejects) + "/200");
}

void ball_counting(Check& c) {
  auto exact = liniso_ball(fam("parity:1", 2, 0), Rational(1, 4)).count();
  c.expect(exact == 15, "|L(chi_e1, 1/4)| = " + std::to_string(exact));
  std::mt19937_64 rng(11);
  std::uint64_t largest = 0;
  for (int r = 2; r <= 3; ++r)
    for (auto omega : {Rational(1, 8), Rational(1, 4)})
      for (int i = 0; i < 20; ++i) {
        BooleanFunction f = oracle::random_function(r, rng);
        std::uint64_t count = liniso_ball(f, omega).count();
        double bound = std::pow(2.0, r * r + binary_entropy(to_double(omega)) * (1 << r));
        largest = std::max(largest, count);
        c.expect(double(count) <= bound, "bound r=" + std::to_string(r));
      }
  c.note("largest ball " + std::to_string(largest));
}

void phi_map_reduction(Check& c) {
  auto built = construct_phi(2, 4, Rational(1, 8));
  c.expect(built.success, "construction");
  if (!built.success) return;
  auto rep = verify_phi(built.map);
  c.expect(rep.pass, "verification");
  c.expect(rep.min_distance && *rep.min_distance >= Rational(1, 8), "min distance");
  auto oracle = exact_oracle();
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b)
      c.expect(reduce_equ(a, b, built.map, oracle) == (a == b), "pair");
  if (rep.min_distance) c.note("min pairwise delta_L = " + str(*rep.min_distance));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact spectral norms", 1.0, exact_spectral_values},
      {2, "approximate-norm LP", 30, lp_correctness},
      {3, "Walsh-Hadamard roundtrip and Parseval", 5, fourier_suite},
      {4, "group order and linear-distance metric", 60, group_facts},
      {5, "canonical forms decide isomorphism", 120, canonical_soundness},
      {6, "spectral sampling certificate", 120, sampling_certificate},
      {7, "junta approximation under linear distance", 180, junta_approximation_check},
      {8, "deterministic protocol end to end", 300, deterministic_end_to_end},
      {9, "private-coin protocol end to end", 300, private_coin_end_to_end},
      {10, "public-coin equality baseline", 60, public_coin_end_to_end},
      {11, "isomorphism-ball counting", 120, ball_counting},
      {12, "separating map and equality reduction", 180, phi_map_reduction},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < cr.budget_seconds;
    bool pass = check.ok() && in_time;
    failed += !pass;
    std::printf("%s  criterion %2d  %-45s %8.3fs (budget %gs)  %s%s%s\n", pass ? "PASS" : "FAIL",
                cr.id, cr.title, secs, cr.budget_seconds, check.summary().c_str(),
                check.notes().empty() ? "" : "; ", check.notes().c_str());
    if (!in_time) std::printf("      over time budget\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
