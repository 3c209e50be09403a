#include "liniso/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "liniso/errors.hpp"

namespace liniso {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw ContractViolation("not a rational of the form p/q: '" + std::string(text) + "'");
  std::string n(num[0] == '+' ? num.substr(1) : num);
  BigInt d{std::string(den)};
  if (d == 0) throw ContractViolation("zero denominator in '" + std::string(text) + "'");
  Rational r(BigInt(n), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

BigInt ceil(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::int64_t snapped_ceil(double value, double snap) {
  double nearest = std::round(value);
  if (std::abs(value - nearest) <= snap) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(value));
}

Rational dyadic(std::int64_t k, int n) {
  Rational r{BigInt(static_cast<long>(k)), BigInt(1) << n};
  r.canonicalize();
  return r;
}

}  // namespace liniso
