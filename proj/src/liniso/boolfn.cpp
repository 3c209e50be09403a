#include "liniso/boolfn.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "liniso/errors.hpp"

namespace liniso {

namespace {

std::size_t word_count(int n) { return n >= 6 ? (std::size_t{1} << (n - 6)) : 1; }

void check_arity(int n) {
  if (n < 0 || n > kMaxArity)
    throw ContractViolation("arity " + std::to_string(n) + " outside [0, " +
                            std::to_string(kMaxArity) + "]");
}

void check_transform(int n, const Limits& limits) {
  if (n > limits.transform_n)
    throw GuardRefusal("Walsh-Hadamard transform on n = " + std::to_string(n) +
                       " exceeds guard n <= " + std::to_string(limits.transform_n));
}

void require_same_arity(const BooleanFunction& f, const BooleanFunction& g, const char* op) {
  if (f.arity() != g.arity()) throw ContractViolation(std::string(op) + ": arity mismatch");
}

template <class T>
void butterfly(std::vector<T>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        T u = a[j];
        T v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BooleanFunction::BooleanFunction(int n) : n_(n) {
  check_arity(n);
  words_.assign(word_count(n), 0);
}

BooleanFunction BooleanFunction::from_signs(int n, std::span<const int> signs) {
  BooleanFunction f(n);
  if (signs.size() != f.size()) throw ContractViolation("from_signs: need 2^n values");
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (signs[x] != 1 && signs[x] != -1) throw ContractViolation("from_signs: values must be +-1");
    f.set_bit(x, signs[x] == -1);
  }
  return f;
}

BooleanFunction BooleanFunction::from_words(int n, std::vector<std::uint64_t> words) {
  BooleanFunction f(n);
  if (words.size() != f.words_.size()) throw ContractViolation("from_words: wrong word count");
  if (n < 6) words[0] &= (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
  f.words_ = std::move(words);
  return f;
}

int BooleanFunction::evaluate(const gf2::Vec& x) const {
  if (x.dim() != n_) throw ContractViolation("evaluate: arity mismatch");
  return (*this)(x.bits());
}

std::uint64_t BooleanFunction::weight() const {
  std::uint64_t w = 0;
  for (auto word : words_) w += std::popcount(word);
  return w;
}

BooleanFunction BooleanFunction::negated() const {
  BooleanFunction g(n_);
  for (std::uint64_t x = 0; x < size(); ++x) g.set_bit(x, !bit(x));
  return g;
}

bool lex_less(const BooleanFunction& a, const BooleanFunction& b) {
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    std::uint64_t diff = wa[i] ^ wb[i];
    if (diff) return ((wa[i] >> std::countr_zero(diff)) & 1u) == 0;
  }
  return false;
}

int character(const gf2::Vec& alpha, const gf2::Vec& x) {
  return gf2::dot(alpha, x) ? -1 : 1;
}

std::vector<std::int64_t> wht_integer(const BooleanFunction& f) {
  std::vector<std::int64_t> a(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) a[x] = f(x);
  butterfly(a);
  return a;
}

Spectrum wht(const BooleanFunction& f, const Limits& limits) {
  check_transform(f.arity(), limits);
  auto a = wht_integer(f);
  Spectrum s{f.arity(), {}};
  s.coeffs.reserve(a.size());
  for (auto v : a) s.coeffs.push_back(dyadic(v, f.arity()));
  return s;
}

Spectrum wht(const RealFunction& f, const Limits& limits) {
  check_transform(f.n, limits);
  if (f.values.size() != (std::size_t{1} << f.n)) throw ContractViolation("wht: need 2^n values");
  Spectrum s{f.n, f.values};
  butterfly(s.coeffs);
  Rational scale{1, BigInt(1) << f.n};
  for (auto& c : s.coeffs) c *= scale;
  return s;
}

RealFunction inverse_wht(const Spectrum& s) {
  if (s.coeffs.size() != (std::size_t{1} << s.n))
    throw ContractViolation("inverse_wht: need 2^n coefficients");
  RealFunction r{s.n, s.coeffs};
  butterfly(r.values);
  return r;
}

RealFunction to_real(const BooleanFunction& f) {
  RealFunction r{f.arity(), {}};
  r.values.reserve(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) r.values.emplace_back(f(x));
  return r;
}

std::uint64_t mismatches(const BooleanFunction& f, const BooleanFunction& g) {
  require_same_arity(f, g, "distance");
  std::uint64_t count = 0;
  auto wf = f.words();
  auto wg = g.words();
  for (std::size_t i = 0; i < wf.size(); ++i) count += std::popcount(wf[i] ^ wg[i]);
  return count;
}

Rational distance(const BooleanFunction& f, const BooleanFunction& g) {
  return dyadic(static_cast<std::int64_t>(mismatches(f, g)), f.arity());
}

std::vector<std::uint32_t> image_table(const gf2::Matrix& m) {
  std::vector<std::uint32_t> img(std::size_t{1} << m.dim());
  std::array<std::uint32_t, gf2::kMaxDim> cols{};
  for (int j = 0; j < m.dim(); ++j) cols[j] = m.column(j);
  for (std::size_t x = 1; x < img.size(); ++x)
    img[x] = img[x & (x - 1)] ^ cols[std::countr_zero(x)];
  return img;
}

BooleanFunction compose_linear(const BooleanFunction& f, const gf2::Matrix& m) {
  if (f.arity() != m.dim()) throw ContractViolation("compose_linear: arity mismatch");
  auto img = image_table(m);
  BooleanFunction g(f.arity());
  for (std::uint64_t x = 0; x < g.size(); ++x) g.set_bit(x, f.bit(img[x]));
  return g;
}

BooleanFunction sign_of(const RealFunction& r) {
  if (r.values.size() != (std::size_t{1} << r.n)) throw ContractViolation("sign_of: need 2^n values");
  BooleanFunction f(r.n);
  for (std::uint64_t x = 0; x < f.size(); ++x) f.set_bit(x, sgn(r.values[x]) < 0);
  return f;
}

BooleanFunction lift(const BooleanFunction& core, int n) {
  if (core.arity() > n) throw ContractViolation("lift: core has more variables than target");
  BooleanFunction f(n);
  const std::uint64_t mask = core.size() - 1;
  for (std::uint64_t x = 0; x < f.size(); ++x) f.set_bit(x, core.bit(x & mask));
  return f;
}

Family Family::parse(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view kind = spec.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto number = [&](std::uint32_t fallback) {
    if (arg.empty()) return fallback;
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (ec != std::errc{} || p != arg.data() + arg.size())
      throw ContractViolation("bad family parameter in '" + std::string(spec) + "'");
    return v;
  };
  Family f;
  if (kind == "uniform-random") {
    f.kind = FamilyKind::UniformRandom;
  } else if (kind == "parity") {
    f.kind = FamilyKind::Parity;
    f.alpha = number(1);
  } else if (kind == "and-all") {
    f.kind = FamilyKind::AndAll;
  } else if (kind == "bent-ip") {
    f.kind = FamilyKind::BentIp;
  } else if (kind == "planted-junta") {
    f.kind = FamilyKind::PlantedJunta;
    f.junta_r = static_cast<int>(number(2));
  } else {
    throw ContractViolation("unknown function family '" + std::string(kind) + "'");
  }
  if (!arg.empty() && f.kind != FamilyKind::Parity && f.kind != FamilyKind::PlantedJunta)
    throw ContractViolation("family '" + std::string(kind) + "' takes no parameter");
  return f;
}

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::UniformRandom: return "uniform-random";
    case FamilyKind::Parity: return "parity:" + std::to_string(alpha);
    case FamilyKind::AndAll: return "and-all";
    case FamilyKind::BentIp: return "bent-ip";
    case FamilyKind::PlantedJunta: return "planted-junta:" + std::to_string(junta_r);
  }
  return "?";
}

BooleanFunction generate(const Family& family, int n, std::mt19937_64& rng) {
  check_arity(n);
  BooleanFunction f(n);
  switch (family.kind) {
    case FamilyKind::UniformRandom: {
      std::vector<std::uint64_t> words(f.words().size());
      for (auto& w : words) w = rng();
      return BooleanFunction::from_words(n, std::move(words));
    }
    case FamilyKind::Parity: {
      if (n < 32 && (family.alpha >> n)) throw ContractViolation("parity: alpha wider than n");
      for (std::uint64_t x = 0; x < f.size(); ++x)
        f.set_bit(x, gf2::parity(family.alpha & static_cast<std::uint32_t>(x)));
      return f;
    }
    case FamilyKind::AndAll:
      f.set_bit(f.size() - 1, true);
      return f;
    case FamilyKind::BentIp: {
      if (n % 2) throw ContractViolation("bent-ip needs an even number of variables");
      for (std::uint64_t x = 0; x < f.size(); ++x) {
        int b = 0;
        for (int i = 0; i < n; i += 2) b ^= ((x >> i) & 1u) & ((x >> (i + 1)) & 1u);
        f.set_bit(x, b);
      }
      return f;
    }
    case FamilyKind::PlantedJunta: {
      int r = family.junta_r;
      if (r < 0 || r > n) throw ContractViolation("planted-junta: need 0 <= r <= n");
      BooleanFunction core = generate(Family{FamilyKind::UniformRandom}, r, rng);
      if (n == 0) return core;
      return compose_linear(lift(core, n), gf2::random_nonsingular(n, rng));
    }
  }
  throw ContractViolation("unknown family");
}

BooleanFunction generate(const Family& family, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return generate(family, n, rng);
}

std::string table_hex(const BooleanFunction& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  const std::uint64_t digits = (f.size() + 3) / 4;
  hex.reserve(digits);
  for (std::uint64_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int k = 0; k < 4; ++k) {
      std::uint64_t x = 4 * d + k;
      v = (v << 1) | (x < f.size() && f.bit(x) ? 1 : 0);
    }
    hex.push_back(kDigits[v]);
  }
  return hex;
}

std::string to_text(const BooleanFunction& f) {
  return "n=" + std::to_string(f.arity()) + "\n" + table_hex(f) + "\n";
}

BooleanFunction parse_truth_table(std::string_view text, const Limits& limits) {
  std::size_t nl = text.find('\n');
  std::string_view header = text.substr(0, nl);
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  if (header.substr(0, 2) != "n=") throw ParseError(1, 1, "expected header 'n=<k>'");
  int n = 0;
  auto digits = header.substr(2);
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || digits.empty())
    throw ParseError(1, 3, "expected an integer arity");
  if (p != digits.data() + digits.size())
    throw ParseError(1, 3 + (p - digits.data()), "trailing characters after arity");
  if (n < 0 || n > kMaxArity)
    throw ParseError(1, 3, "arity " + std::to_string(n) + " outside supported range");
  check_transform(n, limits);
  if (nl == std::string_view::npos) throw ParseError(2, 1, "missing truth-table line");
  std::string_view body = text.substr(nl + 1);
  std::size_t end = body.find('\n');
  std::string_view hex = body.substr(0, end);
  if (!hex.empty() && hex.back() == '\r') hex.remove_suffix(1);
  if (end != std::string_view::npos) {
    std::string_view rest = body.substr(end + 1);
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(rest[i])))
        throw ParseError(3, i + 1, "unexpected content after truth table");
  }
  BooleanFunction f(n);
  const std::uint64_t want = (f.size() + 3) / 4;
  if (hex.size() != want)
    throw ParseError(2, std::min<std::size_t>(hex.size(), want) + 1,
                     "expected " + std::to_string(want) + " hex digits, found " +
                         std::to_string(hex.size()));
  for (std::uint64_t d = 0; d < want; ++d) {
    int v = hex_value(hex[d]);
    if (v < 0) throw ParseError(2, d + 1, "not a hex digit");
    for (int k = 0; k < 4; ++k) {
      std::uint64_t x = 4 * d + k;
      bool b = (v >> (3 - k)) & 1;
      if (x < f.size())
        f.set_bit(x, b);
      else if (b)
        throw ParseError(2, d + 1, "padding bits must be zero");
    }
  }
  return f;
}

BooleanFunction read_truth_table(const std::string& path, const Limits& limits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_truth_table(buf.str(), limits);
}

void write_truth_table(const BooleanFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_text(f);
}

}  // namespace liniso
