#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "liniso/bits.hpp"
#include "liniso/boolfn.hpp"
#include "liniso/channel.hpp"
#include "liniso/config.hpp"
#include "liniso/rational.hpp"
#include "liniso/spectral.hpp"

namespace liniso {

enum class Outcome { Accept, Reject, Unknown };
enum class GroundTruth { Near, Far, Unknown };

const char* to_string(Outcome o);
const char* to_string(GroundTruth g);

struct PromiseInstance {
  BooleanFunction f;  // Alice
  BooleanFunction g;  // Bob
  Rational epsilon = 0;
  Rational omega = Rational(1, 4);
  GroundTruth ground_truth = GroundTruth::Unknown;
};

// Near when delta_L <= eps, Far when >= eps + omega, Unknown otherwise.
GroundTruth classify(const BooleanFunction& f, const BooleanFunction& g, const Rational& epsilon,
                     const Rational& omega, const Limits& limits = {});

struct ProtocolOptions {
  Limits limits;
  LpOptions lp;
  SamplerOptions sampler;
  bool affine = false;  // deterministic protocol: receiver minimises over (M, a)
};

enum class TransportKind { Memory, Tcp };
enum class ProtocolKind { Deterministic, PrivateCoin, PublicCoin };

const char* to_string(ProtocolKind k);

struct Transcript {
  std::string protocol;
  int n = 0;
  Rational epsilon;
  Rational omega;
  Outcome outcome = Outcome::Unknown;
  bool valid = true;  // false after a stream fault
  std::vector<Message> messages;
  std::uint64_t total_bits = 0;
  std::uint64_t bits_a_to_b = 0;
  std::uint64_t bits_b_to_a = 0;
  nlohmann::json stats = nlohmann::json::object();
  TransportCounters alice_transport;
  TransportCounters bob_transport;
};

nlohmann::json to_json(const Transcript& t);

// Parameters both parties agree on before the exchange.
struct SessionParams {
  Rational epsilon = 0;
  Rational omega = Rational(1, 4);
  std::uint64_t seed = 0;  // private seed, or the shared one for the public-coin protocol
  int rounds = 7;          // public-coin repetitions
  ProtocolOptions options;
};

// What one party learns from a run. Unknown when this side never sees the verdict.
struct PartyOutput {
  Outcome decision = Outcome::Unknown;
  nlohmann::json stats = nlohmann::json::object();
};

PartyOutput deterministic_party(Endpoint& ep, const BooleanFunction& input, const SessionParams& p);
PartyOutput private_coin_party(Endpoint& ep, const BooleanFunction& input, const SessionParams& p);
PartyOutput public_coin_party(Endpoint& ep, const BooleanFunction& input, const SessionParams& p);

// 64-bit FNV-1a of arity and packed table; the deterministic protocol's sampler seed.
std::uint64_t table_checksum(const BooleanFunction& f);

// Number of Step-5 repetitions in the private-coin protocol, ceil(2/omega).
int private_coin_rounds(const Rational& omega);

Transcript run_deterministic(const PromiseInstance& instance, const ProtocolOptions& options = {},
                             TransportKind transport = TransportKind::Memory);
Transcript run_private_coin(const PromiseInstance& instance, std::uint64_t seed_a,
                            std::uint64_t seed_b, const ProtocolOptions& options = {},
                            TransportKind transport = TransportKind::Memory);
Transcript run_public_coin(const PromiseInstance& instance, std::uint64_t shared_seed, int rounds,
                           const ProtocolOptions& options = {},
                           TransportKind transport = TransportKind::Memory);

// One side of a run over an externally established endpoint (e.g. TCP across
// processes). The transcript is this party's local view.
Transcript run_party(ProtocolKind kind, Endpoint& ep, const BooleanFunction& input,
                     const SessionParams& params);

}  // namespace liniso
