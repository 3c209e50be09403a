#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "liniso/boolfn.hpp"
#include "liniso/config.hpp"
#include "liniso/protocol.hpp"
#include "liniso/rational.hpp"

namespace liniso {

// -w log2 w - (1-w) log2 (1-w), with 0 log 0 = 0.
double binary_entropy(double omega);

// sum_{i <= radius} C(length, i)
BigInt hamming_ball_size(std::uint64_t length, std::uint64_t radius);

// Dense set over all 2^(2^r) truth tables of r-variable functions. A table's
// index is its packed word.
class TableSet {
 public:
  explicit TableSet(int r, bool full = false);

  int arity() const { return r_; }
  std::uint64_t universe() const { return std::uint64_t{1} << (std::uint64_t{1} << r_); }

  bool contains(std::uint64_t table) const { return (bits_[table >> 6] >> (table & 63)) & 1u; }
  void insert(std::uint64_t table) { bits_[table >> 6] |= std::uint64_t{1} << (table & 63); }
  void erase_all(const TableSet& other);
  std::uint64_t count() const;
  bool empty() const { return count() == 0; }
  // Smallest member at or after `from`.
  std::optional<std::uint64_t> first(std::uint64_t from = 0) const;

 private:
  int r_;
  std::vector<std::uint64_t> bits_;
};

std::uint64_t table_index(const BooleanFunction& f);  // arity <= 6
BooleanFunction table_function(int r, std::uint64_t index);

// Hamming radius used for "linear distance at most omega" on r variables.
std::uint64_t ball_radius(int r, const Rational& omega);

// {g : delta_L(f, g) <= omega}: union over M in GL_r of Hamming balls around f o M.
TableSet liniso_ball(const BooleanFunction& f, const Rational& omega, const Limits& limits = {});

struct SizeChoice {
  int ell = 0;
  std::uint64_t m = 0;  // 2^ell
};

// Smallest m = 2^ell with m - ell^2 - H(omega) m >= n; nullopt past m = 2^32.
std::optional<SizeChoice> choose_m(int n, const Rational& omega);

struct PhiMap {
  int n = 0;
  int ell = 0;
  std::uint64_t m = 0;
  Rational omega;
  std::vector<BooleanFunction> tables;  // indexed by x in F2^n
};

struct PhiConstruction {
  bool success = false;
  PhiMap map;                 // partial on failure
  std::uint64_t assigned = 0;
  std::uint64_t remaining = 0;  // |R| at the end
};

PhiConstruction construct_phi(int n, int ell, const Rational& omega, const Limits& limits = {});

struct PhiReport {
  bool pass = true;
  std::optional<Rational> min_distance;  // none for a one-point map
  std::uint64_t witness_a = 0;           // pair attaining the minimum
  std::uint64_t witness_b = 0;
  std::uint64_t pairs = 0;
  bool injective = true;
};

PhiReport verify_phi(const PhiMap& phi, const Limits& limits = {});

// Decides the isomorphism promise problem; true means "isomorphic".
using LinIsoOracle = std::function<bool(const BooleanFunction& f, const BooleanFunction& g)>;

LinIsoOracle exact_oracle(const Limits& limits = {});
LinIsoOracle deterministic_oracle(const Rational& omega, const ProtocolOptions& options = {});
LinIsoOracle private_coin_oracle(const Rational& omega, std::uint64_t seed,
                                 const ProtocolOptions& options = {});
LinIsoOracle public_coin_oracle(const Rational& omega, std::uint64_t seed, int rounds = 7,
                                const ProtocolOptions& options = {});

// Equality of a and b decided through the isomorphism oracle on their images.
bool reduce_equ(std::uint64_t a, std::uint64_t b, const PhiMap& phi, const LinIsoOracle& oracle);

}  // namespace liniso
