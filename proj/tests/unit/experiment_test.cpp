#include <gtest/gtest.h>

#include "liniso/errors.hpp"
#include "liniso/experiment.hpp"

using namespace liniso;

namespace {

ExperimentConfig small(ProtocolKind kind) {
  ExperimentConfig c;
  c.family = Family::parse("planted-junta:2");
  c.n_min = 3;
  c.n_max = 4;
  c.omegas = {Rational(1, 4)};
  c.trials = 6;
  c.seed = 11;
  c.protocol = kind;
  return c;
}

}  // namespace

TEST(Experiment, DeterministicProtocolIsAlwaysCorrect) {
  auto rows = run_experiment(small(ProtocolKind::Deterministic));
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.skipped);
    EXPECT_EQ(r.correct_frac, 1.0);
    EXPECT_EQ(r.near_trials, 3);
    EXPECT_EQ(r.far_trials, 3);
    EXPECT_GE(r.t_ceiling, 1);
    EXPECT_LE(r.mean_bits, double(r.max_bits));
  }
  EXPECT_EQ(rows[0].n, 3);
  EXPECT_EQ(rows[1].n, 4);
}

TEST(Experiment, CsvIsByteIdentical) {
  auto c = small(ProtocolKind::PublicCoin);
  std::string a = to_csv(run_experiment(c));
  c.workers = 1;
  std::string b = to_csv(run_experiment(c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), kExperimentHeader);
}

TEST(Experiment, PublicCoinBitsAreFixed) {
  auto rows = run_experiment(small(ProtocolKind::PublicCoin));
  for (const auto& r : rows) {
    EXPECT_EQ(r.max_bits, 8u);
    EXPECT_EQ(r.mean_bits, 8.0);
  }
}

TEST(Experiment, ImpossibleFarCellIsSkipped) {
  ExperimentConfig c = small(ProtocolKind::Deterministic);
  c.family = Family::parse("and-all");
  c.n_max = 3;
  c.far_attempts = 20;
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].skipped);
  EXPECT_NE(to_csv(rows).find("skipped"), std::string::npos);
}

TEST(Experiment, Validation) {
  ExperimentConfig c = small(ProtocolKind::PrivateCoin);
  c.epsilon = Rational(1, 8);
  EXPECT_THROW(validate(c), ContractViolation);
  c = small(ProtocolKind::Deterministic);
  c.trials = 0;
  EXPECT_THROW(validate(c), ContractViolation);
  c = small(ProtocolKind::Deterministic);
  c.n_max = 6;
  EXPECT_THROW(validate(c), GuardRefusal);
}
