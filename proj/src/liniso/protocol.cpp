#include "liniso/protocol.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <functional>
#include <random>
#include <thread>

#include "liniso/errors.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"

namespace liniso {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "accept";
    case Outcome::Reject: return "reject";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(GroundTruth g) {
  switch (g) {
    case GroundTruth::Near: return "near";
    case GroundTruth::Far: return "far";
    case GroundTruth::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Deterministic: return "deterministic";
    case ProtocolKind::PrivateCoin: return "private-coin";
    case ProtocolKind::PublicCoin: return "public-coin";
  }
  return "?";
}

GroundTruth classify(const BooleanFunction& f, const BooleanFunction& g, const Rational& epsilon,
                     const Rational& omega, const Limits& limits) {
  Rational d = linear_distance(f, g, limits).value();
  if (d <= epsilon) return GroundTruth::Near;
  if (d >= epsilon + omega) return GroundTruth::Far;
  return GroundTruth::Unknown;
}

std::uint64_t table_checksum(const BooleanFunction& f) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<std::uint64_t>(f.arity()));
  for (auto w : f.words()) mix(w);
  return h;
}

int private_coin_rounds(const Rational& omega) {
  if (sgn(omega) <= 0) throw ContractViolation("omega must be positive");
  return static_cast<int>(liniso::ceil(Rational(2) / omega).get_si());
}

namespace {

const char* key(Party p) { return p == Party::Alice ? "alice" : "bob"; }

BitString single_bit(bool b) {
  BitString s;
  s.push_back(b);
  return s;
}

bool read_single_bit(const BitString& msg) {
  BitReader r(msg);
  bool b = r.read_bit();
  r.expect_end();
  return b;
}

void require_protocol_arity(const BooleanFunction& f) {
  if (f.arity() < 1) throw ContractViolation("protocols need at least one variable");
}

// Alice sends gamma(her ceiling); Bob answers with one bit. Returns that bit
// as both parties see it.
bool exchange_ceiling(Endpoint& ep, std::int64_t mine, PartyOutput& out,
                      const std::function<bool(std::int64_t alice, std::int64_t bob)>& bob_rule) {
  if (ep.self() == Party::Alice) {
    ep.send(encode_gamma(static_cast<std::uint64_t>(mine)));
    return read_single_bit(ep.recv());
  }
  BitString m = ep.recv();
  BitReader r(m);
  auto alice = static_cast<std::int64_t>(decode_gamma(r));
  r.expect_end();
  out.stats["ceiling_alice"] = alice;
  bool bit = bob_rule(alice, mine);
  ep.send(single_bit(bit));
  return bit;
}

// sign(sum_a counts[a] chi_a(x)) for every x, via an in-place butterfly.
BooleanFunction core_from_counts(int ell, std::vector<std::int64_t> sums) {
  for (std::size_t h = 1; h < sums.size(); h <<= 1)
    for (std::size_t i = 0; i < sums.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        std::int64_t a = sums[j], b = sums[j + h];
        sums[j] = a + b;
        sums[j + h] = a - b;
      }
  std::vector<int> signs(sums.size());
  for (std::size_t x = 0; x < sums.size(); ++x) signs[x] = sums[x] < 0 ? -1 : 1;
  return BooleanFunction::from_signs(ell, signs);
}

}  // namespace

PartyOutput deterministic_party(Endpoint& ep, const BooleanFunction& input, const SessionParams& p) {
  require_protocol_arity(input);
  PartyOutput out;
  const int n = input.arity();
  const Party self = ep.self();
  const auto& opt = p.options;

  ApproxNormWitness w = approx_spectral_norm(input, Rational(1, 3), opt.limits, opt.lp);
  const std::int64_t mine = w.ceiling();
  out.stats[std::string("ceiling_") + key(self)] = mine;

  // Bit 0: Alice builds (ties go to Alice); bit 1: roles swap.
  bool swap = exchange_ceiling(ep, mine, out, [](std::int64_t a, std::int64_t b) { return b < a; });
  const Party builder = swap ? Party::Bob : Party::Alice;
  out.stats["builder"] = key(builder);

  if (self == builder) {
    SamplingResult sample = bs_sample(input, w, p.omega / 4, table_checksum(input), opt.sampler);
    std::vector<gf2::Vec> support = sample.representation.support();
    gf2::BasisExtension ext = gf2::extend_to_basis(n, support);
    const int ell = std::max(ext.rank, 1);

    BitString msg = encode_gamma(static_cast<std::uint64_t>(ell));
    msg.append(encode_gamma(sample.sample_count));
    for (const auto& s : sample.representation.samples) {
      msg.append_uint(ext.transform.apply(s.alpha.bits()), ell);
      msg.push_back(s.sign < 0);
    }
    ep.send(msg);

    out.stats["t_used"] = mine;
    out.stats["ell"] = ell;
    out.stats["T"] = sample.sample_count;
    out.stats["support_size"] = support.size();
    out.stats["sampler_attempts"] = sample.attempts;
    out.stats["sample_distance"] = to_string(sample.achieved_distance);
    return out;
  }

  BitString msg = ep.recv();
  BitReader r(msg);
  const std::uint64_t ell = decode_gamma(r);
  if (ell > static_cast<std::uint64_t>(n)) throw ProtocolFault("announced dimension exceeds n");
  const std::uint64_t count = decode_gamma(r);
  if (count > r.remaining() / (ell + 1)) throw ProtocolFault("announced sample count exceeds message");
  std::vector<std::int64_t> counts(std::size_t{1} << ell, 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t a = r.read_uint(static_cast<int>(ell));
    counts[a] += r.read_bit() ? -1 : 1;
  }
  r.expect_end();

  BooleanFunction F = lift(core_from_counts(static_cast<int>(ell), counts), n);
  Rational d = opt.affine ? affine_distance(F, input, opt.limits).value()
                          : linear_distance(F, input, opt.limits).value();
  Rational threshold = p.epsilon + p.omega / 2;
  out.decision = d <= threshold ? Outcome::Accept : Outcome::Reject;
  out.stats["t_used"] = out.stats.value("ceiling_alice", mine);
  if (builder == Party::Bob) out.stats["t_used"] = mine;
  out.stats["ell"] = ell;
  out.stats["T"] = count;
  out.stats["receiver_distance"] = to_string(d);
  out.stats["accept_threshold"] = to_string(threshold);
  return out;
}

PartyOutput private_coin_party(Endpoint& ep, const BooleanFunction& input, const SessionParams& p) {
  require_protocol_arity(input);
  PartyOutput out;
  const auto& opt = p.options;
  const Party self = ep.self();

  // Step 0: isomorphic inputs become literally identical.
  BooleanFunction canon = canonical_form(input, opt.limits).function;

  ApproxNormWitness w = approx_spectral_norm(canon, Rational(1, 3), opt.limits, opt.lp);
  const std::int64_t mine = w.ceiling();
  out.stats[std::string("ceiling_") + key(self)] = mine;
  if (exchange_ceiling(ep, mine, out, [](std::int64_t a, std::int64_t b) { return a != b; })) {
    out.decision = Outcome::Reject;
    out.stats["rejected_at"] = "ceiling";
    return out;
  }

  JuntaApproximation j = junta_approximation(canon, w, p.omega);
  const int r = std::max(j.r, 1);
  BooleanFunction core = lift(j.core, r);
  out.stats[self == Party::Alice ? "r" : "s"] = r;
  out.stats[std::string("support_size_") + key(self)] = j.significant.size();

  bool mismatch;
  if (self == Party::Alice) {
    ep.send(encode_gamma(static_cast<std::uint64_t>(r)));
    mismatch = read_single_bit(ep.recv());
  } else {
    BitString m = ep.recv();
    BitReader rd(m);
    std::uint64_t their = decode_gamma(rd);
    rd.expect_end();
    out.stats["r"] = their;
    mismatch = their != static_cast<std::uint64_t>(r);
    ep.send(single_bit(mismatch));
  }
  if (mismatch) {
    out.decision = Outcome::Reject;
    out.stats["rejected_at"] = "junta_arity";
    return out;
  }

  BooleanFunction canon_core = canonical_form(core, opt.limits).function;
  const int rounds = private_coin_rounds(p.omega);
  out.stats["rounds_planned"] = rounds;
  out.stats["round_bits"] = r + 2;

  std::mt19937_64 rng(p.seed);
  const std::uint64_t mask = (std::uint64_t{1} << r) - 1;
  for (int i = 0; i < rounds; ++i) {
    bool differ;
    if (self == Party::Alice) {
      std::uint64_t x = rng() & mask;
      BitString q;
      q.append_uint(x, r);
      q.push_back(canon_core.bit(x));
      ep.send(q);
      differ = read_single_bit(ep.recv());
    } else {
      BitString q = ep.recv();
      BitReader rd(q);
      std::uint64_t x = rd.read_uint(r);
      bool value = rd.read_bit();
      rd.expect_end();
      differ = value != canon_core.bit(x);
      ep.send(single_bit(differ));
    }
    if (differ) {
      out.decision = Outcome::Reject;
      out.stats["rounds_run"] = i + 1;
      out.stats["rejected_at"] = "sample";
      return out;
    }
  }
  out.stats["rounds_run"] = rounds;
  out.decision = Outcome::Accept;
  return out;
}

PartyOutput public_coin_party(Endpoint& ep, const BooleanFunction& input, const SessionParams& p) {
  require_protocol_arity(input);
  if (p.rounds < 1) throw ContractViolation("public-coin protocol needs at least one round");
  PartyOutput out;
  BooleanFunction canon = canonical_form(input, p.options.limits).function;
  auto words = canon.words();
  const std::uint64_t tail =
      canon.arity() >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << canon.size()) - 1;

  auto fingerprint = [&](int round) {
    std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                      static_cast<std::uint32_t>(round)};
    std::mt19937_64 shared(seq);
    int parity = 0;
    for (auto w : words) parity ^= std::popcount(w & shared() & tail) & 1;
    return parity != 0;
  };

  out.stats["rounds"] = p.rounds;
  if (ep.self() == Party::Alice) {
    for (int i = 0; i < p.rounds; ++i) ep.send(single_bit(fingerprint(i)));
    out.decision = read_single_bit(ep.recv()) ? Outcome::Accept : Outcome::Reject;
    return out;
  }
  bool all_match = true;
  for (int i = 0; i < p.rounds; ++i)
    if (read_single_bit(ep.recv()) != fingerprint(i)) all_match = false;
  ep.send(single_bit(all_match));
  out.decision = all_match ? Outcome::Accept : Outcome::Reject;
  return out;
}

namespace {

using PartyFn = PartyOutput (*)(Endpoint&, const BooleanFunction&, const SessionParams&);

PartyFn party_function(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Deterministic: return &deterministic_party;
    case ProtocolKind::PrivateCoin: return &private_coin_party;
    case ProtocolKind::PublicCoin: return &public_coin_party;
  }
  throw ContractViolation("unknown protocol");
}

void fill_totals(Transcript& t) {
  t.total_bits = t.bits_a_to_b = t.bits_b_to_a = 0;
  for (const auto& m : t.messages) {
    t.total_bits += m.bits.size();
    (m.dir == Direction::AliceToBob ? t.bits_a_to_b : t.bits_b_to_a) += m.bits.size();
  }
}

void note_promise(Transcript& t, const PromiseInstance& inst, const Limits& limits) {
  GroundTruth truth = inst.ground_truth;
  if (truth == GroundTruth::Unknown) {
    if (inst.f.arity() > limits.gl_n) {
      t.stats["promise"] = "unchecked";
      return;
    }
    truth = classify(inst.f, inst.g, inst.epsilon, inst.omega, limits);
  }
  t.stats["promise"] = truth == GroundTruth::Unknown ? "off" : to_string(truth);
  if (truth == GroundTruth::Unknown) t.stats["off_promise"] = true;
}

Transcript simulate(ProtocolKind kind, const PromiseInstance& inst, SessionParams alice_params,
                    SessionParams bob_params, const ProtocolOptions& options,
                    TransportKind transport) {
  if (inst.f.arity() != inst.g.arity()) throw ContractViolation("protocol inputs differ in arity");
  PartyFn fn = party_function(kind);
  for (auto* sp : {&alice_params, &bob_params}) {
    sp->epsilon = inst.epsilon;
    sp->omega = inst.omega;
    sp->options = options;
  }

  EndpointPair channel =
      transport == TransportKind::Memory ? make_memory_channel() : make_loopback_tcp_channel();
  Endpoint& alice = *channel.first;
  Endpoint& bob = *channel.second;

  PartyOutput out_a, out_b;
  std::exception_ptr err_a, err_b;
  std::thread alice_thread([&] {
    try {
      out_a = fn(alice, inst.f, alice_params);
    } catch (...) {
      err_a = std::current_exception();
      alice.close();
    }
  });
  try {
    out_b = fn(bob, inst.g, bob_params);
  } catch (...) {
    err_b = std::current_exception();
    bob.close();
  }
  alice_thread.join();

  Transcript t;
  t.protocol = to_string(kind);
  t.n = inst.f.arity();
  t.epsilon = inst.epsilon;
  t.omega = inst.omega;
  t.messages = alice.log();
  t.alice_transport = alice.counters();
  t.bob_transport = bob.counters();
  fill_totals(t);

  std::string fault;
  for (auto err : {err_a, err_b}) {
    if (!err) continue;
    try {
      std::rethrow_exception(err);
    } catch (const ProtocolFault& e) {
      if (fault.empty()) fault = e.what();
    }
  }
  if (!fault.empty()) {
    t.valid = false;
    t.outcome = Outcome::Unknown;
    t.stats["fault"] = fault;
    return t;
  }

  if (alice.log() != bob.log()) throw InvariantFault("parties disagree on the message log");
  if (out_a.decision != Outcome::Unknown && out_b.decision != Outcome::Unknown &&
      out_a.decision != out_b.decision)
    throw InvariantFault("parties reached different verdicts");
  t.outcome = out_b.decision != Outcome::Unknown ? out_b.decision : out_a.decision;
  t.stats = out_a.stats;
  t.stats.update(out_b.stats);
  note_promise(t, inst, options.limits);
  return t;
}

}  // namespace

Transcript run_deterministic(const PromiseInstance& instance, const ProtocolOptions& options,
                             TransportKind transport) {
  return simulate(ProtocolKind::Deterministic, instance, {}, {}, options, transport);
}

Transcript run_private_coin(const PromiseInstance& instance, std::uint64_t seed_a,
                            std::uint64_t seed_b, const ProtocolOptions& options,
                            TransportKind transport) {
  if (sgn(instance.epsilon) != 0)
    throw ContractViolation("the private-coin protocol only decides the epsilon = 0 case");
  SessionParams a, b;
  a.seed = seed_a;
  b.seed = seed_b;
  return simulate(ProtocolKind::PrivateCoin, instance, a, b, options, transport);
}

Transcript run_public_coin(const PromiseInstance& instance, std::uint64_t shared_seed, int rounds,
                           const ProtocolOptions& options, TransportKind transport) {
  if (sgn(instance.epsilon) != 0)
    throw ContractViolation("the public-coin protocol only decides the epsilon = 0 case");
  SessionParams s;
  s.seed = shared_seed;
  s.rounds = rounds;
  return simulate(ProtocolKind::PublicCoin, instance, s, s, options, transport);
}

Transcript run_party(ProtocolKind kind, Endpoint& ep, const BooleanFunction& input,
                     const SessionParams& params) {
  Transcript t;
  t.protocol = to_string(kind);
  t.n = input.arity();
  t.epsilon = params.epsilon;
  t.omega = params.omega;
  PartyOutput out;
  try {
    out = party_function(kind)(ep, input, params);
  } catch (const ProtocolFault& e) {
    ep.close();
    t.valid = false;
    t.stats["fault"] = e.what();
  }
  t.messages = ep.log();
  (ep.self() == Party::Alice ? t.alice_transport : t.bob_transport) = ep.counters();
  fill_totals(t);
  if (t.valid) {
    t.outcome = out.decision;
    t.stats = out.stats;
  }
  t.stats["party"] = key(ep.self());
  return t;
}

namespace {

nlohmann::json to_json(const TransportCounters& c) {
  return {{"payload_bits_sent", c.payload_bits_sent},
          {"payload_bits_received", c.payload_bits_received},
          {"framing_bits_sent", c.framing_bits_sent},
          {"wire_bits_sent", c.wire_bits_sent},
          {"messages_sent", c.messages_sent},
          {"messages_received", c.messages_received}};
}

}  // namespace

nlohmann::json to_json(const Transcript& t) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : t.messages)
    messages.push_back({{"dir", to_string(m.dir)}, {"len", m.bits.size()}, {"hex", m.bits.to_hex()}});
  return {{"protocol", t.protocol},
          {"n", t.n},
          {"epsilon", to_string(t.epsilon)},
          {"omega", to_string(t.omega)},
          {"outcome", to_string(t.outcome)},
          {"valid", t.valid},
          {"total_bits", t.total_bits},
          {"bits_a_to_b", t.bits_a_to_b},
          {"bits_b_to_a", t.bits_b_to_a},
          {"stats", t.stats},
          {"transport", {{"alice", to_json(t.alice_transport)}, {"bob", to_json(t.bob_transport)}}},
          {"messages", messages}};
}

}  // namespace liniso
