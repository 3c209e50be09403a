#include "liniso.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "liniso/boolfn.hpp"
#include "liniso/channel.hpp"
#include "liniso/errors.hpp"
#include "liniso/experiment.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"
#include "liniso/phimap.hpp"
#include "liniso/protocol.hpp"
#include "liniso/spectral.hpp"

using nlohmann::json;

struct liniso_ctx {
  liniso::ProtocolOptions options;
};

struct liniso_fn {
  liniso::BooleanFunction f;
};

struct liniso_phimap {
  liniso::PhiConstruction construction;
};

namespace {

thread_local std::string last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
liniso_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return LINISO_OK;
  } catch (const liniso::ContractViolation& e) {
    last_error = e.what();
    return LINISO_ERR_ARGUMENT;
  } catch (const liniso::GuardRefusal& e) {
    last_error = e.what();
    return LINISO_ERR_GUARD;
  } catch (const liniso::ParseError& e) {
    last_error = e.what();
    return LINISO_ERR_PARSE;
  } catch (const liniso::LpFailure& e) {
    last_error = e.what();
    return LINISO_ERR_LP;
  } catch (const liniso::SamplerFailure& e) {
    last_error = e.what();
    return LINISO_ERR_SAMPLER;
  } catch (const liniso::ProtocolFault& e) {
    last_error = e.what();
    return LINISO_ERR_PROTOCOL;
  } catch (const liniso::InvariantFault& e) {
    last_error = e.what();
    return LINISO_ERR_INVARIANT;
  } catch (const IoError& e) {
    last_error = e.what();
    return LINISO_ERR_IO;
  } catch (const json::exception& e) {
    last_error = e.what();
    return LINISO_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LINISO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LINISO_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return LINISO_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw liniso::ContractViolation(std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** out, const std::string& s) {
  require(out, "output pointer");
  *out = dup_string(s);
}

liniso_fn* wrap(liniso::BooleanFunction f) { return new liniso_fn{std::move(f)}; }

const liniso::Limits& limits_of(const liniso_ctx* ctx) {
  static const liniso::Limits defaults;
  return ctx ? ctx->options.limits : defaults;
}

liniso::ProtocolOptions options_of(const liniso_ctx* ctx) {
  return ctx ? ctx->options : liniso::ProtocolOptions{};
}

liniso::Rational rational_arg(const char* text, const char* fallback) {
  return liniso::parse_rational(text ? text : fallback);
}

json rationals(const std::vector<liniso::Rational>& values) {
  json a = json::array();
  for (const auto& v : values) a.push_back(liniso::to_string(v));
  return a;
}

liniso::ProtocolKind protocol_kind(const char* name) {
  require(name, "protocol");
  std::string p(name);
  if (p == "det") return liniso::ProtocolKind::Deterministic;
  if (p == "rand") return liniso::ProtocolKind::PrivateCoin;
  if (p == "public") return liniso::ProtocolKind::PublicCoin;
  throw liniso::ContractViolation("protocol must be det, rand or public: " + p);
}

std::string hex_width(std::uint64_t v, int bits) {
  int digits = std::max(1, (bits + 3) / 4);
  std::ostringstream s;
  s << std::hex;
  s.width(digits);
  s.fill('0');
  s << v;
  return s.str();
}

}  // namespace

extern "C" {

const char* liniso_version(void) { return "0.1.0"; }

const char* liniso_last_error(void) { return last_error.c_str(); }

const char* liniso_status_name(liniso_status status) {
  switch (status) {
    case LINISO_OK: return "ok";
    case LINISO_ERR_ARGUMENT: return "invalid argument";
    case LINISO_ERR_GUARD: return "guard refusal";
    case LINISO_ERR_PARSE: return "parse error";
    case LINISO_ERR_LP: return "lp failure";
    case LINISO_ERR_SAMPLER: return "sampler failure";
    case LINISO_ERR_PROTOCOL: return "protocol fault";
    case LINISO_ERR_INVARIANT: return "invariant fault";
    case LINISO_ERR_IO: return "i/o error";
    case LINISO_ERR_INFEASIBLE: return "infeasible";
    case LINISO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void liniso_string_free(char* s) { std::free(s); }

liniso_status liniso_ctx_new(liniso_ctx** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new liniso_ctx{};
  });
}

void liniso_ctx_free(liniso_ctx* ctx) { delete ctx; }

liniso_status liniso_ctx_set_guard(liniso_ctx* ctx, const char* name, int value) {
  return guarded([&] {
    require(ctx, "context");
    require(name, "guard name");
    if (value < 0 || value > liniso::kMaxArity)
      throw liniso::ContractViolation("guard value out of range");
    std::string g(name);
    auto& l = ctx->options.limits;
    if (g == "transform") l.transform_n = value;
    else if (g == "gl") l.gl_n = value;
    else if (g == "lp") l.lp_n = value;
    else if (g == "ball") l.ball_r = std::min(value, 5);
    else throw liniso::ContractViolation("unknown guard: " + g);
  });
}

liniso_status liniso_ctx_set_affine(liniso_ctx* ctx, int affine) {
  return guarded([&] {
    require(ctx, "context");
    ctx->options.affine = affine != 0;
  });
}

liniso_status liniso_fn_parse(const liniso_ctx* ctx, const char* text, liniso_fn** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = wrap(liniso::parse_truth_table(text, limits_of(ctx)));
  });
}

liniso_status liniso_fn_read(const liniso_ctx* ctx, const char* path, liniso_fn** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::ostringstream text;
    text << in.rdbuf();
    *out = wrap(liniso::parse_truth_table(text.str(), limits_of(ctx)));
  });
}

liniso_status liniso_fn_write(const liniso_fn* fn, const char* path) {
  return guarded([&] {
    require(fn, "function");
    require(path, "path");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(std::string("cannot write ") + path);
    out << liniso::to_text(fn->f);
    if (!out) throw IoError(std::string("write failed: ") + path);
  });
}

liniso_status liniso_fn_to_text(const liniso_fn* fn, char** out) {
  return guarded([&] {
    require(fn, "function");
    put_string(out, liniso::to_text(fn->f));
  });
}

liniso_status liniso_fn_table_hex(const liniso_fn* fn, char** out) {
  return guarded([&] {
    require(fn, "function");
    put_string(out, liniso::table_hex(fn->f));
  });
}

liniso_status liniso_fn_generate(const char* family, int n, uint64_t seed, liniso_fn** out) {
  return guarded([&] {
    require(family, "family");
    require(out, "output pointer");
    *out = wrap(liniso::generate(liniso::Family::parse(family), n, seed));
  });
}

liniso_status liniso_fn_compose(const liniso_fn* fn, const char* matrix, liniso_fn** out) {
  return guarded([&] {
    require(fn, "function");
    require(matrix, "matrix");
    require(out, "output pointer");
    liniso::gf2::Matrix m = liniso::gf2::parse_matrix(matrix);
    if (m.dim() != fn->f.arity()) throw liniso::ContractViolation("matrix size differs from arity");
    *out = wrap(liniso::compose_linear(fn->f, m));
  });
}

liniso_status liniso_fn_random_isomorph(const liniso_fn* fn, uint64_t seed, liniso_fn** out) {
  return guarded([&] {
    require(fn, "function");
    require(out, "output pointer");
    auto m = liniso::gf2::random_nonsingular(fn->f.arity(), seed);
    *out = wrap(liniso::compose_linear(fn->f, m));
  });
}

int liniso_fn_arity(const liniso_fn* fn) { return fn ? fn->f.arity() : -1; }

int liniso_fn_eval(const liniso_fn* fn, uint64_t x) {
  if (!fn || x >= fn->f.size()) return 0;
  return fn->f(x);
}

int liniso_fn_equal(const liniso_fn* a, const liniso_fn* b) {
  return a && b && a->f == b->f ? 1 : 0;
}

void liniso_fn_free(liniso_fn* fn) { delete fn; }

liniso_status liniso_spectral_norm(const liniso_ctx* ctx, const liniso_fn* fn, char** out) {
  return guarded([&] {
    require(fn, "function");
    put_string(out, liniso::to_string(liniso::spectral_norm(liniso::wht(fn->f, limits_of(ctx)))));
  });
}

liniso_status liniso_wht(const liniso_ctx* ctx, const liniso_fn* fn, char** out) {
  return guarded([&] {
    require(fn, "function");
    liniso::Spectrum s = liniso::wht(fn->f, limits_of(ctx));
    liniso::Rational squares = 0;
    for (const auto& c : s.coeffs) squares += c * c;
    json j = {{"n", s.n},
              {"coeffs", rationals(s.coeffs)},
              {"spectral_norm", liniso::to_string(liniso::spectral_norm(s))},
              {"sum_of_squares", liniso::to_string(squares)}};
    put_string(out, j.dump());
  });
}

liniso_status liniso_approx_norm(const liniso_ctx* ctx, const liniso_fn* fn, const char* gamma,
                                 char** out) {
  return guarded([&] {
    require(fn, "function");
    auto opt = options_of(ctx);
    auto w = liniso::approx_spectral_norm(fn->f, rational_arg(gamma, "1/3"), opt.limits, opt.lp);
    std::size_t support = 0;
    for (const auto& c : w.spectrum.coeffs) support += sgn(c) != 0;
    json j = {{"gamma", liniso::to_string(w.gamma)},
              {"value", liniso::to_string(w.value)},
              {"value_double", liniso::to_double(w.value)},
              {"exact", w.exact},
              {"ceiling", w.ceiling()},
              {"pivots", w.pivots},
              {"support_size", support},
              {"spectrum", rationals(w.spectrum.coeffs)},
              {"witness", rationals(w.witness.values)}};
    put_string(out, j.dump());
  });
}

liniso_status liniso_linear_distance(const liniso_ctx* ctx, const liniso_fn* f, const liniso_fn* g,
                                     int affine, char** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    json j;
    if (affine) {
      auto r = liniso::affine_distance(f->f, g->f, limits_of(ctx));
      j = {{"value", liniso::to_string(r.value())},
           {"mismatches", r.mismatches},
           {"witness", liniso::gf2::to_text(r.witness)},
           {"shift", liniso::gf2::to_string(r.shift)}};
    } else {
      auto r = liniso::linear_distance(f->f, g->f, limits_of(ctx));
      j = {{"value", liniso::to_string(r.value())},
           {"mismatches", r.mismatches},
           {"witness", liniso::gf2::to_text(r.witness)}};
    }
    put_string(out, j.dump());
  });
}

liniso_status liniso_canonical(const liniso_ctx* ctx, const liniso_fn* fn, liniso_fn** canon,
                               char** witness) {
  return guarded([&] {
    require(fn, "function");
    require(canon, "output pointer");
    auto c = liniso::canonical_form(fn->f, limits_of(ctx));
    if (witness) *witness = dup_string(liniso::gf2::to_text(c.witness));
    *canon = wrap(std::move(c.function));
  });
}

liniso_status liniso_sample(const liniso_ctx* ctx, const liniso_fn* fn, const char* gamma,
                            const char* delta, uint64_t seed, char** out) {
  return guarded([&] {
    require(fn, "function");
    auto opt = options_of(ctx);
    auto r = liniso::bs_sample(fn->f, rational_arg(gamma, "1/3"), rational_arg(delta, "1/16"), seed,
                               opt.sampler, opt.limits, opt.lp);
    json samples = json::array();
    for (const auto& s : r.representation.samples) samples.push_back({s.alpha.bits(), s.sign});
    json j = {{"T", r.sample_count},
              {"beta", r.beta},
              {"attempts", r.attempts},
              {"achieved_distance", liniso::to_string(r.achieved_distance)},
              {"h_norm", liniso::to_string(r.h_norm)},
              {"support_size", r.representation.support().size()},
              {"samples", samples}};
    put_string(out, j.dump());
  });
}

liniso_status liniso_junta(const liniso_ctx* ctx, const liniso_fn* fn, const char* omega,
                           char** out) {
  return guarded([&] {
    require(fn, "function");
    auto opt = options_of(ctx);
    auto j = liniso::junta_approximation(fn->f, rational_arg(omega, "1/4"), opt.limits, opt.lp);
    json s = {{"r", j.r},
              {"t", liniso::to_string(j.t)},
              {"threshold", liniso::to_string(j.threshold)},
              {"significant", j.significant.size()},
              {"pointwise_distance", liniso::to_string(j.pointwise_distance)},
              {"core", liniso::to_text(j.core)},
              {"transform", liniso::gf2::to_text(j.transform)}};
    put_string(out, s.dump());
  });
}

liniso_status liniso_run(const liniso_ctx* ctx, const char* protocol, const liniso_fn* f,
                         const liniso_fn* g, const liniso_run_params* params, char** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    liniso_run_params p{};
    if (params) p = *params;
    liniso::PromiseInstance inst;
    inst.f = f->f;
    inst.g = g->f;
    inst.epsilon = rational_arg(p.epsilon, "0");
    inst.omega = rational_arg(p.omega, "1/4");
    auto opt = options_of(ctx);
    auto transport = p.tcp ? liniso::TransportKind::Tcp : liniso::TransportKind::Memory;
    liniso::Transcript t;
    switch (protocol_kind(protocol)) {
      case liniso::ProtocolKind::Deterministic:
        t = liniso::run_deterministic(inst, opt, transport);
        break;
      case liniso::ProtocolKind::PrivateCoin:
        t = liniso::run_private_coin(inst, p.seed_a, p.seed_b, opt, transport);
        break;
      case liniso::ProtocolKind::PublicCoin:
        t = liniso::run_public_coin(inst, p.seed_a, p.rounds ? p.rounds : 7, opt, transport);
        break;
    }
    put_string(out, liniso::to_json(t).dump());
  });
}

liniso_status liniso_run_party(const liniso_ctx* ctx, const char* protocol, const char* role,
                               const char* address, int listen, const liniso_fn* input,
                               const liniso_run_params* params, char** out) {
  return guarded([&] {
    require(role, "role");
    require(address, "address");
    require(input, "input");
    std::string r(role);
    if (r != "alice" && r != "bob") throw liniso::ContractViolation("role must be alice or bob");
    liniso::Party self = r == "alice" ? liniso::Party::Alice : liniso::Party::Bob;
    auto kind = protocol_kind(protocol);

    liniso_run_params p{};
    if (params) p = *params;
    liniso::SessionParams s;
    s.epsilon = rational_arg(p.epsilon, "0");
    s.omega = rational_arg(p.omega, "1/4");
    s.seed = self == liniso::Party::Alice || kind == liniso::ProtocolKind::PublicCoin ? p.seed_a
                                                                                       : p.seed_b;
    s.rounds = p.rounds ? p.rounds : 7;
    s.options = options_of(ctx);
    if (kind != liniso::ProtocolKind::Deterministic && sgn(s.epsilon) != 0)
      throw liniso::ContractViolation("randomized protocols only decide the epsilon = 0 case");

    auto [host, port] = liniso::parse_host_port(address);
    std::unique_ptr<liniso::TcpEndpoint> ep = listen ? liniso::TcpEndpoint::listen(host, port, self)
                                                     : liniso::TcpEndpoint::connect(host, port, self);
    liniso::Transcript t = liniso::run_party(kind, *ep, input->f, s);
    put_string(out, liniso::to_json(t).dump());
  });
}

double liniso_binary_entropy(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) return -1.0;
  return liniso::binary_entropy(omega);
}

liniso_status liniso_hamming_ball_size(uint64_t length, uint64_t radius, char** out) {
  return guarded([&] { put_string(out, liniso::hamming_ball_size(length, radius).get_str()); });
}

liniso_status liniso_ball_size(const liniso_ctx* ctx, const liniso_fn* fn, const char* omega,
                               uint64_t* out) {
  return guarded([&] {
    require(fn, "function");
    require(out, "output pointer");
    *out = liniso::liniso_ball(fn->f, rational_arg(omega, "1/4"), limits_of(ctx)).count();
  });
}

liniso_status liniso_choose_m(int n, const char* omega, int* ell, uint64_t* m) {
  auto status = guarded([&] {
    require(ell, "ell");
    require(m, "m");
    auto c = liniso::choose_m(n, rational_arg(omega, "1/4"));
    if (!c) throw liniso::GuardRefusal("no m <= 2^32 satisfies the counting inequality");
    *ell = c->ell;
    *m = c->m;
  });
  return status == LINISO_ERR_GUARD ? LINISO_ERR_INFEASIBLE : status;
}

liniso_status liniso_phimap_construct(const liniso_ctx* ctx, int n, int ell, const char* omega,
                                      liniso_phimap** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new liniso_phimap{
        liniso::construct_phi(n, ell, rational_arg(omega, "1/4"), limits_of(ctx))};
  });
}

int liniso_phimap_success(const liniso_phimap* map) {
  return map && map->construction.success ? 1 : 0;
}

uint64_t liniso_phimap_size(const liniso_phimap* map) {
  return map ? map->construction.map.tables.size() : 0;
}

liniso_status liniso_phimap_image(const liniso_phimap* map, uint64_t x, liniso_fn** out) {
  return guarded([&] {
    require(map, "map");
    require(out, "output pointer");
    const auto& tables = map->construction.map.tables;
    if (x >= tables.size()) throw liniso::ContractViolation("input outside the map's domain");
    *out = wrap(tables[x]);
  });
}

liniso_status liniso_phimap_to_text(const liniso_phimap* map, char** out) {
  return guarded([&] {
    require(map, "map");
    const auto& phi = map->construction.map;
    std::string text;
    for (std::uint64_t x = 0; x < phi.tables.size(); ++x)
      text += hex_width(x, phi.n) + " -> " + liniso::table_hex(phi.tables[x]) + "\n";
    put_string(out, text);
  });
}

liniso_status liniso_phimap_verify(const liniso_ctx* ctx, const liniso_phimap* map, char** out) {
  return guarded([&] {
    require(map, "map");
    const auto& c = map->construction;
    auto rep = liniso::verify_phi(c.map, limits_of(ctx));
    json j = {{"constructed", c.success},
              {"assigned", c.assigned},
              {"remaining", c.remaining},
              {"pass", rep.pass && c.success},
              {"pairs", rep.pairs},
              {"injective", rep.injective},
              {"omega", liniso::to_string(c.map.omega)}};
    if (rep.min_distance) {
      j["min_distance"] = liniso::to_string(*rep.min_distance);
      j["witness"] = {rep.witness_a, rep.witness_b};
    } else {
      j["min_distance"] = nullptr;
    }
    put_string(out, j.dump());
  });
}

liniso_status liniso_reduce_equ(const liniso_ctx* ctx, const liniso_phimap* map, uint64_t a,
                                uint64_t b, const char* oracle, uint64_t seed, int* equal) {
  return guarded([&] {
    require(map, "map");
    require(oracle, "oracle");
    require(equal, "output pointer");
    const auto& phi = map->construction.map;
    auto opt = options_of(ctx);
    std::string o(oracle);
    liniso::LinIsoOracle fn;
    if (o == "exact") fn = liniso::exact_oracle(opt.limits);
    else if (o == "det") fn = liniso::deterministic_oracle(phi.omega, opt);
    else if (o == "rand") fn = liniso::private_coin_oracle(phi.omega, seed, opt);
    else if (o == "public") fn = liniso::public_coin_oracle(phi.omega, seed, 7, opt);
    else throw liniso::ContractViolation("oracle must be exact, det, rand or public: " + o);
    *equal = liniso::reduce_equ(a, b, phi, fn) ? 1 : 0;
  });
}

void liniso_phimap_free(liniso_phimap* map) { delete map; }

liniso_status liniso_experiment(const liniso_ctx* ctx, const char* config_json, char** csv,
                                char** skipped_json) {
  return guarded([&] {
    require(config_json, "config");
    json in = json::parse(config_json);
    liniso::ExperimentConfig c;
    c.options = options_of(ctx);
    c.family = liniso::Family::parse(in.value("family", std::string("planted-junta:2")));
    if (in.contains("n")) c.n_min = c.n_max = in["n"].get<int>();
    c.n_min = in.value("n_min", c.n_min);
    c.n_max = in.value("n_max", c.n_max);
    if (in.contains("omegas")) {
      c.omegas.clear();
      for (const auto& w : in["omegas"]) c.omegas.push_back(liniso::parse_rational(w.get<std::string>()));
    }
    c.trials = in.value("trials", c.trials);
    c.seed = in.value("seed", c.seed);
    c.protocol = protocol_kind(in.value("protocol", std::string("det")).c_str());
    c.epsilon = liniso::parse_rational(in.value("epsilon", std::string("0")));
    c.rounds = in.value("rounds", c.rounds);
    c.mix = liniso::parse_instance_mix(in.value("mix", std::string("mixed")));
    c.far_attempts = in.value("far_attempts", c.far_attempts);
    c.timing = in.value("timing", c.timing);
    c.workers = in.value("workers", c.workers);

    auto rows = liniso::run_experiment(c);
    json skipped = json::array();
    for (const auto& r : rows)
      if (r.skipped)
        skipped.push_back({{"n", r.n}, {"omega", liniso::to_string(r.omega)}, {"reason", r.reason}});
    put_string(csv, liniso::to_csv(rows));
    if (skipped_json) *skipped_json = dup_string(skipped.dump());
  });
}

}  // extern "C"
