#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liniso/boolfn.hpp"
#include "liniso/protocol.hpp"
#include "liniso/rational.hpp"

namespace liniso {

// Which promise side each trial draws. Mixed alternates Near, Far, Near, ...
enum class InstanceMix { Mixed, Near, Far };

struct ExperimentConfig {
  Family family;
  int n_min = 3;
  int n_max = 3;
  std::vector<Rational> omegas{Rational(1, 4)};
  int trials = 10;
  std::uint64_t seed = 0;
  ProtocolKind protocol = ProtocolKind::Deterministic;
  Rational epsilon = 0;  // deterministic protocol only
  int rounds = 7;        // public coin
  InstanceMix mix = InstanceMix::Mixed;
  int far_attempts = 10000;
  bool timing = false;  // wall_ms stays 0 otherwise, keeping output byte-stable
  int workers = 0;      // 0: hardware concurrency
  ProtocolOptions options;
};

struct ExperimentRow {
  int n = 0;
  std::string family;
  Rational omega;
  std::int64_t t_ceiling = 0;  // largest ceil(||f_hat||_{1,1/3}) over Alice's inputs
  double correct_frac = 0;
  double mean_bits = 0;
  std::uint64_t max_bits = 0;
  double wall_ms = 0;
  int near_trials = 0;
  int far_trials = 0;
  bool skipped = false;
  std::string reason;
};

// Throws ContractViolation or GuardRefusal before any work if a cell is out of range.
void validate(const ExperimentConfig& config);

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kExperimentHeader =
    "n,family,omega,t_ceiling,correct_frac,mean_bits,max_bits,wall_ms";

// Skipped cells keep their key columns and read "skipped" in correct_frac.
std::string to_csv(const std::vector<ExperimentRow>& rows);

InstanceMix parse_instance_mix(const std::string& text);

}  // namespace liniso
