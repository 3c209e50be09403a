#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "liniso/config.hpp"
#include "liniso/gf2.hpp"
#include "liniso/rational.hpp"

namespace liniso {

inline constexpr int kMaxArity = gf2::kMaxDim;

// f : F2^n -> {-1,+1}, bit-packed. Bit b at index x means f(x) = (-1)^b, and
// the index of x is its integer encoding with x_1 as the least significant bit.
class BooleanFunction {
 public:
  BooleanFunction() : BooleanFunction(0) {}
  explicit BooleanFunction(int n);  // constant +1

  static BooleanFunction from_signs(int n, std::span<const int> signs);
  static BooleanFunction from_words(int n, std::vector<std::uint64_t> words);

  int arity() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  bool bit(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set_bit(std::uint64_t x, bool b) {
    if (b)
      words_[x >> 6] |= std::uint64_t{1} << (x & 63);
    else
      words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
  }
  int operator()(std::uint64_t x) const { return bit(x) ? -1 : 1; }
  int evaluate(const gf2::Vec& x) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t weight() const;  // number of points mapped to -1
  BooleanFunction negated() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

// Lexicographic order on b(0) b(1) ... b(2^n - 1) with 0 < 1.
bool lex_less(const BooleanFunction& a, const BooleanFunction& b);

// f : F2^n -> Q, point side.
struct RealFunction {
  int n = 0;
  std::vector<Rational> values;
};

// Fourier coefficients indexed by the integer encoding of alpha.
struct Spectrum {
  int n = 0;
  std::vector<Rational> coeffs;
};

int character(const gf2::Vec& alpha, const gf2::Vec& x);

Spectrum wht(const BooleanFunction& f, const Limits& limits = {});
Spectrum wht(const RealFunction& f, const Limits& limits = {});
// 2^n f_hat(alpha) as integers.
std::vector<std::int64_t> wht_integer(const BooleanFunction& f);
RealFunction inverse_wht(const Spectrum& s);

RealFunction to_real(const BooleanFunction& f);
std::uint64_t mismatches(const BooleanFunction& f, const BooleanFunction& g);
Rational distance(const BooleanFunction& f, const BooleanFunction& g);

// x -> f(Mx). M may be singular.
BooleanFunction compose_linear(const BooleanFunction& f, const gf2::Matrix& m);
// Images Mx for every x in index order.
std::vector<std::uint32_t> image_table(const gf2::Matrix& m);

// Pointwise sign with sign(0) = +1.
BooleanFunction sign_of(const RealFunction& r);

// Function on n variables that reads only the first core.arity() coordinates.
BooleanFunction lift(const BooleanFunction& core, int n);

enum class FamilyKind { UniformRandom, Parity, AndAll, BentIp, PlantedJunta };

struct Family {
  FamilyKind kind = FamilyKind::UniformRandom;
  std::uint32_t alpha = 1;  // parity
  int junta_r = 2;          // planted-junta

  // "uniform-random", "parity:<alpha>", "and-all", "bent-ip", "planted-junta:<r>"
  static Family parse(std::string_view spec);
  std::string name() const;
};

BooleanFunction generate(const Family& family, int n, std::uint64_t seed);
BooleanFunction generate(const Family& family, int n, std::mt19937_64& rng);

// Truth-table text: "n=<k>\n<hex>\n", bits b(0) b(1)... packed MSB-first per digit.
std::string to_text(const BooleanFunction& f);
BooleanFunction parse_truth_table(std::string_view text, const Limits& limits = {});
BooleanFunction read_truth_table(const std::string& path, const Limits& limits = {});
void write_truth_table(const BooleanFunction& f, const std::string& path);

// Same hex packing without the header line; used for transcripts and maps.
std::string table_hex(const BooleanFunction& f);

}  // namespace liniso
