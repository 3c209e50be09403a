#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "liniso.h"

using nlohmann::json;

namespace {

// Non-zero status from the library, carried to main for reporting.
struct Failure : std::runtime_error {
  liniso_status status;
  explicit Failure(liniso_status s)
      : std::runtime_error(std::string(liniso_status_name(s)) + ": " + liniso_last_error()),
        status(s) {}
};

void check(liniso_status s) {
  if (s != LINISO_OK) throw Failure(s);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  liniso_string_free(s);
  return out;
}

struct Fn {
  liniso_fn* p = nullptr;
  Fn() = default;
  Fn(const Fn&) = delete;
  Fn& operator=(const Fn&) = delete;
  ~Fn() { liniso_fn_free(p); }
};

struct Ctx {
  liniso_ctx* p = nullptr;
  Ctx() { check(liniso_ctx_new(&p)); }
  ~Ctx() { liniso_ctx_free(p); }
};

struct Globals {
  std::uint64_t seed = 0;
  int guard_n = -1;
  bool json = false;
};

void load(const Ctx& ctx, const std::string& path, Fn& fn) {
  check(liniso_fn_read(ctx.p, path.c_str(), &fn.p));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const Globals& g, const json& j, const std::vector<std::string>& lines) {
  if (g.json) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& l : lines) std::cout << l << '\n';
}

std::string chomp(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string bits_of(std::uint64_t v, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += ((v >> i) & 1) ? '1' : '0';
  return s;
}

std::uint64_t parse_index(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = std::stoull(text, &used, 0);
  if (used != text.size()) throw std::invalid_argument("not an index: " + text);
  return v;
}

liniso_run_params run_params(const std::string& eps, const std::string& omega, std::uint64_t a,
                             std::uint64_t b, int rounds, bool tcp) {
  liniso_run_params p{};
  p.epsilon = eps.c_str();
  p.omega = omega.c_str();
  p.seed_a = a;
  p.seed_b = b;
  p.rounds = rounds;
  p.tcp = tcp ? 1 : 0;
  return p;
}

std::vector<std::string> transcript_lines(const json& t) {
  std::vector<std::string> lines = {
      "protocol = " + t["protocol"].get<std::string>(),
      "outcome = " + t["outcome"].get<std::string>(),
      "valid = " + std::string(t["valid"].get<bool>() ? "true" : "false"),
      "total_bits = " + std::to_string(t["total_bits"].get<std::uint64_t>()),
      "bits_a_to_b = " + std::to_string(t["bits_a_to_b"].get<std::uint64_t>()),
      "bits_b_to_a = " + std::to_string(t["bits_b_to_a"].get<std::uint64_t>()),
      "messages = " + std::to_string(t["messages"].size())};
  for (auto& [k, v] : t["stats"].items())
    lines.push_back("stats." + k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()));
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear isomorphism testing of Boolean functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--guard-n", g.guard_n, "Largest n for exhaustive GL_n(F2) sweeps");
  app.add_flag("--json", g.json, "Machine-readable output");

  // norm
  std::string norm_path, norm_gamma;
  auto* norm = app.add_subcommand("norm", "Spectral norm, or the gamma-approximate norm");
  norm->add_option("file", norm_path, "Truth-table file")->required();
  norm->add_option("--gamma", norm_gamma, "Approximation parameter p/q");

  // wht
  std::string wht_path;
  auto* wht = app.add_subcommand("wht", "Walsh-Hadamard coefficients");
  wht->add_option("file", wht_path)->required();

  // gen
  std::string gen_family = "uniform-random", gen_out;
  int gen_n = 3;
  auto* gen = app.add_subcommand("gen", "Generate a function from a family");
  gen->add_option("--family", gen_family,
                  "uniform-random | parity:<alpha> | and-all | bent-ip | planted-junta:<r>");
  gen->add_option("--n", gen_n)->required();
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // canon
  std::string canon_path, canon_out;
  auto* canon = app.add_subcommand("canon", "Lexicographically smallest isomorph");
  canon->add_option("file", canon_path)->required();
  canon->add_option("-o,--output", canon_out, "Write the canonical table here");

  // lindist
  std::string ld_f, ld_g;
  bool ld_affine = false;
  auto* lindist = app.add_subcommand("lindist", "Exact linear distance");
  lindist->add_option("f", ld_f)->required();
  lindist->add_option("g", ld_g)->required();
  lindist->add_flag("--affine", ld_affine, "Minimise over affine maps");

  // protocols
  struct RunArgs {
    std::string f, g, input, eps = "0", omega = "1/4", listen, connect, role, transcript;
    std::uint64_t seed_a = 0, seed_b = 0;
    int rounds = 7;
    bool tcp = false, affine = false;
  };
  RunArgs ra;
  auto add_run = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--f", ra.f, "Alice's truth table");
    c->add_option("--g", ra.g, "Bob's truth table");
    c->add_option("--omega", ra.omega, "Gap parameter p/q");
    c->add_flag("--tcp", ra.tcp, "Use a loopback TCP channel");
    c->add_option("--listen", ra.listen, "Run one party, waiting on host:port");
    c->add_option("--connect", ra.connect, "Run one party, connecting to host:port");
    c->add_option("--role", ra.role, "alice | bob (with --listen/--connect)");
    c->add_option("--input", ra.input, "This party's truth table (with --listen/--connect)");
    c->add_option("--transcript", ra.transcript, "Write the JSON transcript here");
    return c;
  };
  auto* run_det = add_run("run-det", "Deterministic protocol");
  run_det->add_option("--eps", ra.eps, "Closeness parameter p/q");
  run_det->add_flag("--affine", ra.affine, "Receiver minimises over affine maps");
  auto* run_rand = add_run("run-rand", "Private-coin protocol");
  run_rand->add_option("--seed-a", ra.seed_a);
  run_rand->add_option("--seed-b", ra.seed_b);
  auto* run_public = add_run("run-public", "Public-coin equality baseline");
  run_public->add_option("--rounds", ra.rounds);

  // phimap
  int pm_n = 1, pm_ell = 2;
  std::string pm_omega = "1/4";
  bool pm_verify = false;
  auto* phimap = app.add_subcommand("phimap", "Greedy separating map into truth tables");
  phimap->add_option("--n", pm_n)->required();
  phimap->add_option("--ell", pm_ell)->required();
  phimap->add_option("--omega", pm_omega);
  phimap->add_flag("--verify", pm_verify, "Check all pairwise linear distances");

  // reduce-equ
  std::string re_oracle = "exact", re_a, re_b;
  bool re_all = false;
  auto* reduce = app.add_subcommand("reduce-equ", "Decide equality through the separating map");
  reduce->add_option("--n", pm_n)->required();
  reduce->add_option("--ell", pm_ell)->required();
  reduce->add_option("--omega", pm_omega);
  reduce->add_option("--oracle", re_oracle, "exact | det | rand | public");
  reduce->add_option("--a", re_a, "First input (integer, 0x.. allowed)");
  reduce->add_option("--b", re_b, "Second input");
  reduce->add_flag("--all", re_all, "Run every input pair and report agreement");

  // experiment
  std::string ex_family = "planted-junta:2", ex_protocol = "det", ex_eps = "0", ex_mix = "mixed",
              ex_out;
  std::vector<std::string> ex_omegas;
  int ex_nmin = 3, ex_nmax = 3, ex_trials = 10, ex_rounds = 7, ex_workers = 0;
  bool ex_timing = false;
  auto* experiment = app.add_subcommand("experiment", "Sweep a protocol over n and omega, write CSV");
  experiment->add_option("--family", ex_family);
  experiment->add_option("--n-min", ex_nmin);
  experiment->add_option("--n-max", ex_nmax);
  experiment->add_option("--omega", ex_omegas, "Repeatable")->take_all();
  experiment->add_option("--trials", ex_trials);
  experiment->add_option("--protocol", ex_protocol, "det | rand | public");
  experiment->add_option("--eps", ex_eps);
  experiment->add_option("--rounds", ex_rounds);
  experiment->add_option("--mix", ex_mix, "mixed | near | far");
  experiment->add_option("--workers", ex_workers);
  experiment->add_flag("--timing", ex_timing, "Fill wall_ms (output no longer byte-stable)");
  experiment->add_option("-o,--output", ex_out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    Ctx ctx;
    if (g.guard_n >= 0) check(liniso_ctx_set_guard(ctx.p, "gl", g.guard_n));

    if (*norm) {
      Fn f;
      load(ctx, norm_path, f);
      char* s = nullptr;
      check(liniso_spectral_norm(ctx.p, f.p, &s));
      std::string exact = take(s);
      json j = {{"spectral_norm", exact}};
      std::vector<std::string> lines = {"spectral_norm = " + exact};
      if (!norm_gamma.empty()) {
        check(liniso_approx_norm(ctx.p, f.p, norm_gamma.c_str(), &s));
        json a = json::parse(take(s));
        j["approx"] = a;
        lines.push_back("gamma = " + a["gamma"].get<std::string>());
        lines.push_back("approx = " + a["value"].get<std::string>());
        std::ostringstream d;
        d.precision(9);
        d << a["value_double"].get<double>();
        lines.push_back("approx_decimal = " + d.str());
        lines.push_back("ceiling = " + std::to_string(a["ceiling"].get<std::int64_t>()));
        lines.push_back("exact_arithmetic = " + std::string(a["exact"].get<bool>() ? "yes" : "no"));
        lines.push_back("witness_support = " + std::to_string(a["support_size"].get<std::size_t>()));
      }
      emit(g, j, lines);
    } else if (*wht) {
      Fn f;
      load(ctx, wht_path, f);
      char* s = nullptr;
      check(liniso_wht(ctx.p, f.p, &s));
      json j = json::parse(take(s));
      std::vector<std::string> lines;
      int n = j["n"].get<int>();
      for (std::size_t a = 0; a < j["coeffs"].size(); ++a)
        lines.push_back(bits_of(a, n) + " " + j["coeffs"][a].get<std::string>());
      lines.push_back("sum_of_squares = " + j["sum_of_squares"].get<std::string>());
      emit(g, j, lines);
    } else if (*gen) {
      Fn f;
      check(liniso_fn_generate(gen_family.c_str(), gen_n, g.seed, &f.p));
      char* s = nullptr;
      check(liniso_fn_to_text(f.p, &s));
      write_output(gen_out, take(s));
    } else if (*canon) {
      Fn f, c;
      load(ctx, canon_path, f);
      char* witness = nullptr;
      check(liniso_canonical(ctx.p, f.p, &c.p, &witness));
      std::string w = chomp(take(witness));
      char* s = nullptr;
      check(liniso_fn_to_text(c.p, &s));
      std::string text = take(s);
      if (!canon_out.empty()) write_output(canon_out, text);
      emit(g, {{"canonical", text}, {"witness", w}},
           {canon_out.empty() ? text + "witness:\n" + w : "witness:\n" + w});
    } else if (*lindist) {
      Fn f, h;
      load(ctx, ld_f, f);
      load(ctx, ld_g, h);
      char* s = nullptr;
      check(liniso_linear_distance(ctx.p, f.p, h.p, ld_affine, &s));
      json j = json::parse(take(s));
      std::vector<std::string> lines = {
          std::string(ld_affine ? "affine_distance = " : "linear_distance = ") +
              j["value"].get<std::string>(),
          "mismatches = " + std::to_string(j["mismatches"].get<std::uint64_t>())};
      if (ld_affine) lines.push_back("shift = " + j["shift"].get<std::string>());
      lines.push_back("witness:\n" + chomp(j["witness"].get<std::string>()));
      emit(g, j, lines);
    } else if (*run_det || *run_rand || *run_public) {
      const char* protocol = *run_det ? "det" : *run_rand ? "rand" : "public";
      if (*run_det && ra.affine) check(liniso_ctx_set_affine(ctx.p, 1));
      if (*run_public) ra.seed_a = g.seed;
      auto p = run_params(ra.eps, ra.omega, ra.seed_a, ra.seed_b, ra.rounds, ra.tcp);
      char* s = nullptr;
      if (!ra.listen.empty() || !ra.connect.empty()) {
        if (ra.role.empty() || ra.input.empty())
          throw std::invalid_argument("--listen/--connect need --role and --input");
        Fn in;
        load(ctx, ra.input, in);
        bool listening = !ra.listen.empty();
        check(liniso_run_party(ctx.p, protocol, ra.role.c_str(),
                               (listening ? ra.listen : ra.connect).c_str(), listening, in.p, &p,
                               &s));
      } else {
        if (ra.f.empty() || ra.g.empty()) throw std::invalid_argument("--f and --g are required");
        Fn f, h;
        load(ctx, ra.f, f);
        load(ctx, ra.g, h);
        check(liniso_run(ctx.p, protocol, f.p, h.p, &p, &s));
      }
      json t = json::parse(take(s));
      if (!ra.transcript.empty()) write_output(ra.transcript, t.dump(2) + "\n");
      emit(g, t, transcript_lines(t));
    } else if (*phimap) {
      liniso_phimap* map = nullptr;
      check(liniso_phimap_construct(ctx.p, pm_n, pm_ell, pm_omega.c_str(), &map));
      std::unique_ptr<liniso_phimap, void (*)(liniso_phimap*)> hold(map, liniso_phimap_free);
      char* s = nullptr;
      check(liniso_phimap_to_text(map, &s));
      std::string text = take(s);
      json j = {{"success", liniso_phimap_success(map) == 1}, {"map", text}};
      std::vector<std::string> lines;
      if (!text.empty()) lines.push_back(text.substr(0, text.size() - 1));
      lines.push_back(std::string("construction = ") +
                      (liniso_phimap_success(map) ? "success" : "fail"));
      if (pm_verify) {
        check(liniso_phimap_verify(ctx.p, map, &s));
        json v = json::parse(take(s));
        j["verify"] = v;
        lines.push_back("pairs = " + std::to_string(v["pairs"].get<std::uint64_t>()));
        lines.push_back("min_distance = " + (v["min_distance"].is_null()
                                                 ? std::string("none")
                                                 : v["min_distance"].get<std::string>()));
        lines.push_back(std::string("verify = ") + (v["pass"].get<bool>() ? "pass" : "fail"));
      }
      emit(g, j, lines);
      if (!liniso_phimap_success(map)) return 3;
    } else if (*reduce) {
      liniso_phimap* map = nullptr;
      check(liniso_phimap_construct(ctx.p, pm_n, pm_ell, pm_omega.c_str(), &map));
      std::unique_ptr<liniso_phimap, void (*)(liniso_phimap*)> hold(map, liniso_phimap_free);
      if (!liniso_phimap_success(map)) throw std::runtime_error("map construction failed");
      if (re_all) {
        std::uint64_t k = liniso_phimap_size(map), agree = 0, total = 0;
        for (std::uint64_t a = 0; a < k; ++a)
          for (std::uint64_t b = 0; b < k; ++b) {
            int eq = 0;
            check(liniso_reduce_equ(ctx.p, map, a, b, re_oracle.c_str(), g.seed + total, &eq));
            agree += (eq == 1) == (a == b);
            ++total;
          }
        emit(g, {{"pairs", total}, {"agree", agree}},
             {"pairs = " + std::to_string(total), "agree = " + std::to_string(agree)});
        return agree == total ? 0 : 4;
      }
      if (re_a.empty() || re_b.empty()) throw std::invalid_argument("--a and --b are required");
      int eq = 0;
      check(liniso_reduce_equ(ctx.p, map, parse_index(re_a), parse_index(re_b), re_oracle.c_str(),
                              g.seed, &eq));
      emit(g, {{"equal", eq == 1}}, {std::string("equal = ") + (eq ? "true" : "false")});
    } else if (*experiment) {
      if (ex_omegas.empty()) ex_omegas.push_back("1/4");
      json cfg = {{"family", ex_family}, {"n_min", ex_nmin},     {"n_max", ex_nmax},
                  {"omegas", ex_omegas}, {"trials", ex_trials},  {"seed", g.seed},
                  {"protocol", ex_protocol}, {"epsilon", ex_eps}, {"rounds", ex_rounds},
                  {"mix", ex_mix},       {"timing", ex_timing},  {"workers", ex_workers}};
      char* csv = nullptr;
      char* skipped = nullptr;
      check(liniso_experiment(ctx.p, cfg.dump().c_str(), &csv, &skipped));
      json sk = json::parse(take(skipped));
      write_output(ex_out, take(csv));
      for (const auto& s : sk)
        std::cerr << "skipped n=" << s["n"] << " omega=" << s["omega"].get<std::string>() << ": "
                  << s["reason"].get<std::string>() << '\n';
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
