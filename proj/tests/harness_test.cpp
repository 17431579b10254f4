#include "paim/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "paim/outputs.hpp"

namespace paim {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n - 1;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("paim_harness_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config(std::size_t chains, std::size_t samples) {
  ExperimentConfig c;
  c.sampler.chains = chains;
  c.sampler.samples = samples;
  c.sampler.train_steps = 1;
  c.truth.value = Vector{-1.0949, 0.0};
  return c;
}

TEST(RandomInit, FillsTheBoxAndUsesSigmaSquared) {
  RandomStream rng(17);
  const auto init = random_init(Vector{-15, -15}, Vector{15, 15}, 10.0, 10000, rng);
  double lo[2] = {1e9, 1e9}, hi[2] = {-1e9, -1e9};
  for (const auto& x : init.states)
    for (int i = 0; i < 2; ++i) lo[i] = std::min(lo[i], x[i]), hi[i] = std::max(hi[i], x[i]);
  for (int i = 0; i < 2; ++i) {
    EXPECT_GE(lo[i], -15.0);
    EXPECT_LT(lo[i], -14.9);
    EXPECT_LE(hi[i], 15.0);
    EXPECT_GT(hi[i], 14.9);
  }
  for (const auto& p : init.proposals) {
    EXPECT_EQ(p.global().cov.matrix(), Matrix({{100, 0}, {0, 100}}));
    EXPECT_EQ(p.local().cov.matrix(), Matrix({{100, 0}, {0, 100}}));
    for (int i = 0; i < 2; ++i) {
      EXPECT_LE(std::abs(p.global().mean[i]), 15.0);
      EXPECT_LE(std::abs(p.local().mean[i]), 15.0);
    }
  }
}

TEST(RandomInit, RejectsDegenerateBox) {
  RandomStream rng(1);
  EXPECT_THROW(random_init(Vector{0, 0}, Vector{0, 0}, 10.0, 3, rng), std::invalid_argument);
  EXPECT_THROW(random_init(Vector{0, 1}, Vector{1, 0}, 10.0, 3, rng), std::invalid_argument);
}

TEST(ParseConfig, ReadsEveryBlock) {
  const auto j = nlohmann::json::parse(R"({
    "algorithm": "paim",
    "target": {"kind": "gaussian", "mean": [1, 2], "cov": [[1, 0], [0, 1]]},
    "sampler": {"chains": 4, "samples": 80, "train_steps": 3, "stop_step": 9, "epsilon": 0.2,
                "activation": "ceil", "discard_burn_in": true, "parallel": true},
    "init": {"box_lower": [-5, -5], "box_upper": [5, 5], "sigma": 3},
    "replications": 6, "base_seed": 42, "output_dir": "somewhere",
    "truth": [1, 2]
  })");
  const auto c = parse_experiment_config(j);
  EXPECT_EQ(c.algorithm, Algorithm::paim);
  EXPECT_EQ(c.sampler.chains, 4u);
  EXPECT_EQ(c.sampler.samples, 80u);
  EXPECT_EQ(c.sampler.train_steps, 3);
  EXPECT_EQ(c.sampler.stop_step, std::optional<std::int64_t>(9));
  EXPECT_EQ(c.sampler.epsilon, 0.2);
  EXPECT_EQ(c.sampler.activation, ActivationRule::ceil);
  EXPECT_TRUE(c.sampler.discard_burn_in);
  EXPECT_EQ(c.sampler.policy, ExecutionPolicy::parallel);
  EXPECT_EQ(c.init.sigma, 3.0);
  EXPECT_EQ(c.replications, 6u);
  EXPECT_EQ(c.base_seed, 42u);
  EXPECT_EQ(c.output_dir, fs::path("somewhere"));
  EXPECT_EQ(*c.truth.value, (Vector{1, 2}));
  EXPECT_EQ(build_target(c.target).name(), "gaussian");
}

TEST(ParseConfig, InfiniteStopAndGridTruth) {
  const auto c = parse_experiment_config(nlohmann::json::parse(
      R"({"sampler": {"stop_step": "inf"}, "truth": {"grid": {"lower": [-15, -15], "upper": [15, 15], "points": 301}}})"));
  EXPECT_FALSE(c.sampler.stop_step.has_value());
  ASSERT_TRUE(c.truth.grid.has_value());
  EXPECT_EQ(c.truth.grid->points_per_axis, 301u);
}

TEST(ParseConfig, RejectsBadInput) {
  for (const char* text : {R"({"algorithm": "mala"})", R"({"sampler": {"activation": "round"}})",
                           R"({"replications": 0})", R"({"truth": 3})", R"({"sampler": {"stop_step": "never"}})",
                           R"({"sampler": {"chains": "ten"}})", R"([1, 2])", R"({"init": {"sigma": -1}})"}) {
    EXPECT_THROW(parse_experiment_config(nlohmann::json::parse(text)), std::invalid_argument) << text;
  }
  EXPECT_THROW(build_target({{"kind", "rosenbrock"}}), std::invalid_argument);
  EXPECT_THROW(build_target({{"kind", "gaussian"}, {"mean", {0, 0}}}), std::invalid_argument);
  EXPECT_THROW(load_experiment_config("/nonexistent/config.json"), std::invalid_argument);
}

TEST(BuildTarget, MixtureAndBananaParameters) {
  const auto mix = build_target(nlohmann::json::parse(R"({"kind": "gaussian_mixture", "components": [
      {"mean": [-3, 0], "cov": [[1, 0], [0, 1]], "weight": 0.3},
      {"mean": [3, 0], "cov": [[1, 0], [0, 1]], "weight": 0.7}]})"));
  EXPECT_EQ(mix.dim(), 2u);
  EXPECT_GT(mix.log_density(Vector{3, 0}), mix.log_density(Vector{-3, 0}));
  const auto banana = build_target(nlohmann::json::parse(R"({"kind": "banana", "B": 1, "eta1": 1})"));
  EXPECT_DOUBLE_EQ(banana.log_density(Vector{0, 0}), -8.0);
}

TEST(Replicate, RequiresGroundTruth) {
  auto c = small_config(3, 30);
  c.truth = {};
  EXPECT_THROW(replicate(c), std::invalid_argument);
}

TEST(Replicate, FrozenAdaptiveRunMatchesBaseline) {
  auto c = small_config(5, 500);
  c.sampler.stop_step = 0;
  c.replications = 1;
  const auto r = replicate(c);
  ASSERT_TRUE(r.report.reduction_percent.has_value());
  EXPECT_NEAR(*r.report.reduction_percent, 0.0, 1e-9);
}

TEST(Replicate, SeedDerivedAndPolicyIndependent) {
  auto c = small_config(6, 600);
  c.replications = 8;
  const auto serial = replicate(c);
  c.sampler.policy = ExecutionPolicy::parallel;
  const auto parallel = replicate(c);
  EXPECT_EQ(serial.report.paim->estimates, parallel.report.paim->estimates);
  EXPECT_EQ(serial.report.ipc->estimates, parallel.report.ipc->estimates);
  EXPECT_EQ(serial.report.paim->mse, parallel.report.paim->mse);
  // Replications differ from each other.
  EXPECT_NE(serial.report.paim->estimates[0], serial.report.paim->estimates[1]);
  // Reduction is recomputable from the two MSEs.
  const auto& rep = serial.report;
  EXPECT_NEAR(*rep.reduction_percent, 100.0 * (rep.ipc->mse - rep.paim->mse) / rep.ipc->mse, 1e-12);
  EXPECT_GE(rep.paim->mse, 0.0);
}

TEST(Replicate, SingleAlgorithmHasNoReduction) {
  auto c = small_config(3, 90);
  c.algorithm = Algorithm::ipc;
  const auto r = replicate(c);
  EXPECT_FALSE(r.report.paim.has_value());
  EXPECT_FALSE(r.report.reduction_percent.has_value());
  EXPECT_TRUE(r.first_ipc.has_value());
}

TEST(Outputs, FormatsAreStable) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(-2.0), "-2");
  EXPECT_NEAR(ellipse_radius_squared(2, 0.90), 4.605170185988091, 1e-12);
  EXPECT_NEAR(ellipse_radius_squared(2, 0.90), -2.0 * std::log(0.1), 1e-12);
}

TEST(Outputs, RowCountsMatchTheRun) {
  auto c = small_config(2, 10);
  const auto r = replicate(c);
  const auto dir = fresh_dir("rows");
  emit_outputs(*r.first_paim, r.report, dir);
  EXPECT_EQ(data_rows(dir / "samples.csv"), 10u);
  EXPECT_EQ(data_rows(dir / "activity.csv"), r.first_paim->total_steps * 2);
  for (const char* f : {"params.json", "summary.json", "ellipses.csv"}) EXPECT_TRUE(fs::exists(dir / f));
  EXPECT_EQ(slurp(dir / "samples.csv").substr(0, 27), "t,chain,k_n,x_1,x_2,accepte");
}

TEST(Outputs, FrozenRunIsActiveEverywhere) {
  auto c = small_config(2, 40);
  c.sampler.stop_step = 0;
  const auto r = replicate(c);
  const auto dir = fresh_dir("frozen");
  emit_outputs(*r.first_paim, r.report, dir);
  std::ifstream in(dir / "activity.csv");
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.back(), '1') << line;
    ++rows;
  }
  EXPECT_EQ(rows, 40u);
}

TEST(Outputs, ParamsShareTheGlobalComponent) {
  auto c = small_config(8, 800);
  const auto r = replicate(c);
  const auto params = params_json(*r.first_paim);
  const auto& chains = params.at("chains");
  for (const auto& ch : chains) {
    EXPECT_EQ(ch.at("global"), chains[0].at("global"));
  }
}

TEST(Outputs, ByteIdenticalOnRerun) {
  auto c = small_config(5, 700);
  c.replications = 3;
  const auto a_dir = fresh_dir("a"), b_dir = fresh_dir("b");
  const auto a = replicate(c);
  emit_outputs(*a.first_paim, a.report, a_dir);
  const auto b = replicate(c);
  emit_outputs(*b.first_paim, b.report, b_dir);
  for (const char* f : {"samples.csv", "activity.csv", "params.json", "summary.json", "ellipses.csv"})
    EXPECT_EQ(slurp(a_dir / f), slurp(b_dir / f)) << f;
}

TEST(Outputs, EllipsesListFinalActiveChainsAndTheGlobalComponent) {
  auto c = small_config(20, 2000);
  const auto r = replicate(c);
  const auto dir = fresh_dir("ellipses");
  emit_outputs(*r.first_paim, r.report, dir);
  EXPECT_EQ(data_rows(dir / "ellipses.csv"), r.first_paim->final_active_count() + 1);
}

TEST(Outputs, UnwritableDirectoryIsReported) {
  auto c = small_config(2, 10);
  const auto r = replicate(c);
  const auto file = fresh_dir("blocker");
  std::ofstream(file) << "x";
  EXPECT_THROW(emit_outputs(*r.first_paim, r.report, file / "sub"), std::runtime_error);
}

}  // namespace
}  // namespace paim
