#include "liniso/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "liniso/errors.hpp"
#include "liniso/gf2.hpp"
#include "liniso/lindist.hpp"
#include "liniso/spectral.hpp"

namespace liniso {

InstanceMix parse_instance_mix(const std::string& text) {
  if (text == "mixed") return InstanceMix::Mixed;
  if (text == "near") return InstanceMix::Near;
  if (text == "far") return InstanceMix::Far;
  throw ContractViolation("instance mix must be mixed, near or far: " + text);
}

void validate(const ExperimentConfig& c) {
  if (c.trials < 1) throw ContractViolation("trials must be at least 1");
  if (c.n_min < 1 || c.n_max < c.n_min) throw ContractViolation("bad n range");
  if (c.omegas.empty()) throw ContractViolation("need at least one omega");
  for (const auto& w : c.omegas)
    if (!(sgn(w) > 0 && w <= 1)) throw ContractViolation("omega must lie in (0, 1]");
  if (c.protocol != ProtocolKind::Deterministic && sgn(c.epsilon) != 0)
    throw ContractViolation("randomized protocols only run with epsilon = 0");
  if (c.protocol == ProtocolKind::PublicCoin && c.rounds < 1)
    throw ContractViolation("rounds must be at least 1");
  if (c.family.kind == FamilyKind::PlantedJunta && c.family.junta_r > c.n_min)
    throw ContractViolation("planted junta dimension exceeds n");
  // Instance certification needs exact linear distance at every n.
  gf2::check_gl_guard(c.n_max, c.options.limits.gl_n);
  if (c.n_max > c.options.limits.lp_n)
    throw GuardRefusal("experiment n exceeds the LP guard n <= " +
                       std::to_string(c.options.limits.lp_n));
}

namespace {

struct Cell {
  int n;
  Rational omega;
  std::uint64_t index;
};

bool is_near_trial(InstanceMix mix, int trial) {
  switch (mix) {
    case InstanceMix::Near: return true;
    case InstanceMix::Far: return false;
    case InstanceMix::Mixed: return trial % 2 == 0;
  }
  return true;
}

ExperimentRow run_cell(const ExperimentConfig& c, const Cell& cell) {
  auto start = std::chrono::steady_clock::now();
  ExperimentRow row;
  row.n = cell.n;
  row.family = c.family.name();
  row.omega = cell.omega;

  std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                    static_cast<std::uint32_t>(cell.index)};
  std::mt19937_64 rng(seq);
  const Limits& limits = c.options.limits;
  const Rational far_at = c.epsilon + cell.omega;

  int correct = 0;
  std::uint64_t bits = 0;
  for (int trial = 0; trial < c.trials; ++trial) {
    PromiseInstance inst;
    inst.epsilon = c.epsilon;
    inst.omega = cell.omega;
    inst.f = generate(c.family, cell.n, rng);
    if (is_near_trial(c.mix, trial)) {
      inst.g = compose_linear(inst.f, gf2::random_nonsingular(cell.n, rng));
      inst.ground_truth = GroundTruth::Near;
      ++row.near_trials;
    } else {
      bool found = false;
      for (int a = 0; a < c.far_attempts && !found; ++a) {
        inst.g = generate(c.family, cell.n, rng);
        found = linear_distance(inst.f, inst.g, limits).value() >= far_at;
      }
      if (!found) {
        row.skipped = true;
        row.reason = "no far instance in " + std::to_string(c.far_attempts) + " attempts";
        return row;
      }
      inst.ground_truth = GroundTruth::Far;
      ++row.far_trials;
    }

    Transcript t;
    switch (c.protocol) {
      case ProtocolKind::Deterministic:
        t = run_deterministic(inst, c.options);
        break;
      case ProtocolKind::PrivateCoin: {
        std::uint64_t sa = rng(), sb = rng();
        t = run_private_coin(inst, sa, sb, c.options);
        break;
      }
      case ProtocolKind::PublicCoin:
        t = run_public_coin(inst, rng(), c.rounds, c.options);
        break;
    }
    Outcome want = inst.ground_truth == GroundTruth::Near ? Outcome::Accept : Outcome::Reject;
    if (t.valid && t.outcome == want) ++correct;
    bits += t.total_bits;
    row.max_bits = std::max(row.max_bits, t.total_bits);

    std::int64_t ceiling = t.stats.contains("ceiling_alice")
                               ? t.stats["ceiling_alice"].get<std::int64_t>()
                               : approx_spectral_norm(inst.f, Rational(1, 3), limits, c.options.lp)
                                     .ceiling();
    row.t_ceiling = std::max(row.t_ceiling, ceiling);
  }
  row.correct_frac = double(correct) / c.trials;
  row.mean_bits = double(bits) / c.trials;
  if (c.timing)
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<Cell> cells;
  for (int n = config.n_min; n <= config.n_max; ++n)
    for (const auto& w : config.omegas) cells.push_back({n, w, cells.size()});

  std::vector<ExperimentRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        rows[i] = run_cell(config, cells[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned count = config.workers > 0 ? unsigned(config.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  count = std::min<unsigned>(count, cells.size());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << kExperimentHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    out << r.n << ',' << r.family << ',' << to_string(r.omega) << ',';
    if (r.skipped) {
      out << ",skipped,,,\n";
      continue;
    }
    out << r.t_ceiling << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.3f,", r.correct_frac, r.mean_bits);
    out << buf << r.max_bits << ',';
    std::snprintf(buf, sizeof buf, "%.1f", r.wall_ms);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace liniso
