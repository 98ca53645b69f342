#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cmsa/edmonds.hpp"
#include "cmsa/harness.hpp"
#include "cmsa/json.hpp"

using namespace cmsa;

namespace {

std::string csv_of(const ExperimentReport& rep) {
  std::ostringstream os;
  write_trial_csv(rep, os);
  return os.str();
}

ExperimentConfig small_config(unsigned threads) {
  ExperimentConfig cfg;
  cfg.n = 120;
  cfg.trials = 12;
  cfg.base_seed = 314;
  cfg.budget = BudgetSpec::power(0.5);
  cfg.parallelism = threads;
  return cfg;
}

}  // namespace

TEST(Budget, Resolve) {
  EXPECT_DOUBLE_EQ(BudgetSpec::absolute(3.5).resolve(100), 3.5);
  EXPECT_DOUBLE_EQ(BudgetSpec::alpha_n(0.3).resolve(2000), 600.0);
  EXPECT_DOUBLE_EQ(BudgetSpec::alpha_constant(2.0).resolve(2000), 2.0);
  EXPECT_NEAR(BudgetSpec::power(0.75).resolve(2000), std::pow(2000.0, 0.75), 1e-9);
}

TEST(Experiment, HugeBudgetSingleTrialMatchesEdmonds) {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.trials = 1;
  cfg.base_seed = 1;
  cfg.budget = BudgetSpec::absolute(1e6);
  const auto rep = run_experiment(cfg);
  ASSERT_TRUE(rep.rows[0].ok());
  const Instance inst = generate(5, 1.0, rng::trial_seed(1, 0));
  EXPECT_NEAR(rep.rows[0].w_arb, edmonds(inst).weight, 1e-12);
}

TEST(Experiment, RepeatedRunsGiveIdenticalCsv) {
  EXPECT_EQ(csv_of(run_experiment(small_config(1))), csv_of(run_experiment(small_config(1))));
}

TEST(Experiment, ParallelismDoesNotChangeReport) {
  const auto a = run_experiment(small_config(1));
  const auto b = run_experiment(small_config(4));
  EXPECT_EQ(csv_of(a), csv_of(b));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Experiment, AggregatesMatchRows) {
  const auto rep = run_experiment(small_config(2));
  std::vector<double> w;
  for (const auto& r : rep.rows) {
    if (r.ok()) {
      EXPECT_LE(r.c_arb, rep.c0);
      w.push_back(r.w_arb);
    } else {
      EXPECT_FALSE(r.status.empty());
    }
    EXPECT_EQ(r.seed, rng::trial_seed(314, r.index));
  }
  const Summary s = summarize(w);
  EXPECT_DOUBLE_EQ(rep.w_arb.mean, s.mean);
  EXPECT_DOUBLE_EQ(rep.w_arb.std, s.std);
  EXPECT_DOUBLE_EQ(rep.feasibility_rate, static_cast<double>(w.size()) / 12.0);
  ASSERT_TRUE(rep.prediction);
  EXPECT_EQ(rep.prediction->regime, Regime::case1);
  ASSERT_TRUE(rep.ratio);
  EXPECT_DOUBLE_EQ(*rep.ratio, rep.w_arb.mean / *rep.prediction->w_star);
}

TEST(Experiment, InfeasibleTrialsAreTaggedNotFatal) {
  ExperimentConfig cfg;
  cfg.n = 300;
  cfg.trials = 4;
  cfg.budget = BudgetSpec::alpha_constant(0.8);
  const auto rep = run_experiment(cfg);
  EXPECT_EQ(rep.feasibility_rate, 0.0);
  for (const auto& r : rep.rows) EXPECT_EQ(r.status, "INFEASIBLE-LIKELY");
  EXPECT_EQ(rep.prediction->regime, Regime::case3_infeasible);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), Error);
  cfg.trials = 1;
  cfg.budget = BudgetSpec::absolute(-1.0);
  EXPECT_THROW(run_experiment(cfg), Error);
}

TEST(Experiment, JsonSchemaAndCsvHeader) {
  const auto rep = run_experiment(small_config(1));
  const json j = to_json(rep);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["trials"].size(), 12u);
  EXPECT_EQ(j["prediction"]["regime"], "CASE1");
  const std::string csv = csv_of(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTrialCsvHeader);
}

TEST(Expectation, MiddleRegime) {
  const auto r = run_expectation_check(100000, 0.01, 1.0, 10000, 1);
  EXPECT_EQ(r.regime, MinRegime::e3);
  EXPECT_NEAR(r.expected, 3.9633e-4, 5e-8);
  EXPECT_LE(r.relative_deviation, 0.02);
}

TEST(Expectation, LambdaZeroIsMinOfUniforms) {
  const auto r = run_expectation_check(1000, 0.0, 1.0, 100000, 2);
  EXPECT_NEAR(r.mean * 1001.0, 1.0, 0.02);
}

TEST(Expectation, PowerLaw) {
  const auto r = run_expectation_check(10000, 1.0, 0.5, 20000, 3);
  EXPECT_EQ(r.regime, MinRegime::power_law);
  EXPECT_LE(r.relative_deviation, 0.05);
}

TEST(OracleSuite, FiveHundredInstancesNoViolations) {
  const auto rep = run_oracle_suite(500, 4, 6, 2024);
  EXPECT_EQ(rep.instances, 500u);
  for (const auto& v : rep.violations) ADD_FAILURE() << v.check << " seed " << v.seed << " n " << v.n << ": " << v.detail;
  EXPECT_TRUE(rep.passed());
}

TEST(OracleSuite, TwoVertexEdgeCase) {
  const auto rep = run_oracle_suite(60, 2, 3, 5);
  EXPECT_TRUE(rep.passed());
}

TEST(OracleSuite, MutationIsCaughtWithReplayableSeed) {
  const auto rep = run_oracle_suite(20, 4, 6, 8, true);
  ASSERT_FALSE(rep.passed());
  const auto& v = rep.violations.front();
  EXPECT_EQ(v.check, "edmonds");
  OracleSuiteReport replay;
  run_oracle_case({v.seed, v.n}, replay, true);
  EXPECT_FALSE(replay.passed());
  OracleSuiteReport clean;
  run_oracle_case({v.seed, v.n}, clean, false);
  EXPECT_TRUE(clean.passed());
}
