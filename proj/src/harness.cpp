#include "paim/harness.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace paim {

namespace {

using nlohmann::json;

Vector vector_from(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
  Vector v;
  for (const auto& e : j) {
    if (!e.is_number()) throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

Matrix matrix_from(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected a square matrix");
  Matrix m(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from(j[i], what);
    if (row.size() != j.size()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
    for (std::size_t k = 0; k < row.size(); ++k) m(i, k) = row[k];
  }
  return m;
}

GaussianComponent component_from(const json& j) {
  return GaussianComponent::make(vector_from(j.at("mean"), "target.mean"),
                                 CovarianceMatrix(matrix_from(j.at("cov"), "target.cov")));
}

ActivationRule activation_from(const std::string& s) {
  if (s == "floor") return ActivationRule::floor;
  if (s == "ceil") return ActivationRule::ceil;
  throw std::invalid_argument("activation must be \"floor\" or \"ceil\", got \"" + s + "\"");
}

Algorithm algorithm_from(const std::string& s) {
  if (s == "paim") return Algorithm::paim;
  if (s == "ipc") return Algorithm::ipc;
  if (s == "both") return Algorithm::both;
  throw std::invalid_argument("algorithm must be paim, ipc or both, got \"" + s + "\"");
}

GridSpec grid_from(const json& j) {
  GridSpec g;
  g.lower = vector_from(j.at("lower"), "truth.grid.lower");
  g.upper = vector_from(j.at("upper"), "truth.grid.upper");
  g.points_per_axis = j.value("points", std::size_t{2001});
  return g;
}

struct RunOutcome {
  Vector estimate;
  std::vector<std::size_t> budgets;
  std::size_t total_steps = 0;
  double acceptance_rate = 0.0;
  std::size_t final_active = 0;
};

RunOutcome outcome_of(const RunRecord& r, bool discard_burn_in) {
  return {r.estimate_mean(discard_burn_in), r.budgets, r.total_steps, r.acceptance_rate(),
          r.final_active_count()};
}

AlgorithmSummary summarize(std::vector<RunOutcome>& runs, const Vector& truth) {
  AlgorithmSummary s;
  for (auto& r : runs) {
    s.estimates.push_back(std::move(r.estimate));
    s.budgets.push_back(std::move(r.budgets));
    s.total_steps.push_back(r.total_steps);
    s.acceptance_rates.push_back(r.acceptance_rate);
    s.final_active.push_back(r.final_active);
  }
  s.mse = mse(s.estimates, truth);
  return s;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  ExperimentConfig c;
  try {
    c.algorithm = algorithm_from(j.value("algorithm", std::string("both")));
    if (j.contains("target")) c.target = j.at("target");

    const json s = j.value("sampler", json::object());
    c.sampler.chains = s.value("chains", std::size_t{10});
    c.sampler.samples = s.value("samples", std::size_t{5000});
    c.sampler.train_steps = s.value("train_steps", std::int64_t{1});
    if (s.contains("stop_step") && !s.at("stop_step").is_null()) {
      const auto& v = s.at("stop_step");
      if (v.is_string()) {
        if (v.get<std::string>() != "inf") throw std::invalid_argument("sampler.stop_step: use an integer or \"inf\"");
      } else {
        c.sampler.stop_step = v.get<std::int64_t>();
      }
    }
    c.sampler.epsilon = s.value("epsilon", 0.4);
    c.sampler.activation = activation_from(s.value("activation", std::string("floor")));
    c.sampler.discard_burn_in = s.value("discard_burn_in", false);
    c.sampler.policy = s.value("parallel", false) ? ExecutionPolicy::parallel : ExecutionPolicy::serial;

    const json init = j.value("init", json::object());
    if (init.contains("box_lower")) c.init.lower = vector_from(init.at("box_lower"), "init.box_lower");
    if (init.contains("box_upper")) c.init.upper = vector_from(init.at("box_upper"), "init.box_upper");
    c.init.sigma = init.value("sigma", 10.0);

    const auto reps = j.value("replications", std::int64_t{1});
    if (reps < 1) throw std::invalid_argument("replications must be >= 1");
    c.replications = static_cast<std::size_t>(reps);
    c.base_seed = j.value("base_seed", std::uint64_t{1});
    c.output_dir = j.value("output_dir", std::string("paim_out"));

    if (j.contains("truth")) {
      const auto& t = j.at("truth");
      if (t.is_array()) {
        c.truth.value = vector_from(t, "truth");
      } else if (t.is_object() && t.contains("grid")) {
        c.truth.grid = grid_from(t.at("grid"));
      } else if (t.is_string() && t.get<std::string>() == "grid") {
        c.truth.grid = GridSpec{c.init.lower, c.init.upper, 2001};
      } else {
        throw std::invalid_argument("truth: expected a vector, \"grid\", or {\"grid\": {...}}");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!(c.init.sigma > 0.0)) throw std::invalid_argument("init.sigma must be positive");
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  return parse_experiment_config(j);
}

TargetDensity build_target(const json& desc) {
  try {
    const std::string kind = desc.value("kind", std::string("banana"));
    if (kind == "banana") {
      BananaParams p;
      p.b = desc.value("B", p.b);
      p.eta1 = desc.value("eta1", p.eta1);
      p.eta2 = desc.value("eta2", p.eta2);
      p.eta3 = desc.value("eta3", p.eta3);
      return make_banana_target(p);
    }
    if (kind == "gaussian") {
      auto c = component_from(desc);
      return make_gaussian_target(c.mean, c.cov);
    }
    if (kind == "gaussian_mixture") {
      std::vector<GaussianComponent> comps;
      std::vector<double> weights;
      for (const auto& c : desc.at("components")) {
        comps.push_back(component_from(c));
        weights.push_back(c.value("weight", 1.0));
      }
      return make_gaussian_mixture_target(std::move(comps), std::move(weights));
    }
    throw std::invalid_argument("unknown target kind \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("target: ") + e.what());
  }
}

Vector resolve_truth(const TruthSpec& truth, const TargetDensity& target) {
  if (truth.value) {
    if (truth.value->size() != target.dim()) throw std::invalid_argument("truth: dimension does not match target");
    return *truth.value;
  }
  if (truth.grid) return grid_expectation(target, truth.grid->lower, truth.grid->upper, truth.grid->points_per_axis);
  throw std::invalid_argument("truth: no ground-truth vector and no grid directive given");
}

InitialConditions random_init(std::span<const double> box_lower, std::span<const double> box_upper,
                              double sigma, std::size_t chains, RandomStream& rng) {
  if (box_lower.size() != box_upper.size() || box_lower.empty())
    throw std::invalid_argument("random_init: box bounds must have equal, non-zero dimension");
  for (std::size_t i = 0; i < box_lower.size(); ++i)
    if (!(box_lower[i] < box_upper[i])) throw std::invalid_argument("random_init: degenerate box");
  const std::size_t d = box_lower.size();
  auto draw = [&] {
    Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = rng.uniform(box_lower[i], box_upper[i]);
    return v;
  };
  std::vector<Vector> states, global_means, local_means;
  for (std::size_t n = 0; n < chains; ++n) states.push_back(draw());
  for (std::size_t n = 0; n < chains; ++n) global_means.push_back(draw());
  for (std::size_t n = 0; n < chains; ++n) local_means.push_back(draw());
  return isotropic_initial_conditions(std::move(states), global_means, local_means, sigma);
}

double reduction_percent(double mse_ipc, double mse_paim) {
  if (!(mse_ipc > 0.0)) return 0.0;
  return 100.0 * (mse_ipc - mse_paim) / mse_ipc;
}

ReplicationResult replicate(const ExperimentConfig& config) {
  const TargetDensity target = build_target(config.target);
  const Vector truth = resolve_truth(config.truth, target);
  return replicate(config, target, truth);
}

ReplicationResult replicate(const ExperimentConfig& config, const TargetDensity& target, const Vector& truth) {
  if (config.replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (truth.size() != target.dim()) throw std::invalid_argument("truth: dimension does not match target");
  if (config.init.lower.size() != target.dim())
    throw std::invalid_argument("init box dimension does not match the target");

  const bool run_paim_alg = config.algorithm != Algorithm::ipc;
  const bool run_ipc_alg = config.algorithm != Algorithm::paim;
  const std::size_t reps = config.replications;
  std::vector<RunOutcome> paim_runs(run_paim_alg ? reps : 0);
  std::vector<RunOutcome> ipc_runs(run_ipc_alg ? reps : 0);
  ReplicationResult result;

  auto one = [&](std::size_t r) {
    RandomStream init_rng(derive_seed(config.base_seed, stream::init, r));
    PaimConfig pc = config.sampler;
    pc.init = random_init(config.init.lower, config.init.upper, config.init.sigma, pc.chains, init_rng);
    pc.seed = derive_seed(config.base_seed, stream::sampling, r);
    pc.policy = ExecutionPolicy::serial;
    if (run_paim_alg) {
      RunRecord rec = run_paim(pc, target);
      paim_runs[r] = outcome_of(rec, pc.discard_burn_in);
      if (r == 0) result.first_paim = std::move(rec);
    }
    if (run_ipc_alg) {
      RunRecord rec = run_ipc(ipc_config_from(pc), target);
      ipc_runs[r] = outcome_of(rec, pc.discard_burn_in);
      if (r == 0) result.first_ipc = std::move(rec);
    }
  };

  // Validate once up front so a bad config fails with one diagnostic, not R.
  {
    PaimConfig probe = config.sampler;
    RandomStream rng(0);
    probe.init = random_init(config.init.lower, config.init.upper, config.init.sigma, probe.chains, rng);
    probe.validate(target.dim());
  }

  const auto count = static_cast<std::ptrdiff_t>(reps);
  if (config.sampler.policy == ExecutionPolicy::serial) {
    for (std::ptrdiff_t r = 0; r < count; ++r) one(static_cast<std::size_t>(r));
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < count; ++r) {
      try {
        one(static_cast<std::size_t>(r));
      } catch (...) {
#pragma omp critical(paim_replicate_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  SummaryReport& rep = result.report;
  rep.truth = truth;
  rep.replications = reps;
  if (run_paim_alg) rep.paim = summarize(paim_runs, truth);
  if (run_ipc_alg) rep.ipc = summarize(ipc_runs, truth);
  if (rep.paim && rep.ipc) rep.reduction_percent = reduction_percent(rep.ipc->mse, rep.paim->mse);
  return result;
}

std::vector<Table1Cell> run_table1(const Table1Options& options) {
  const TargetDensity target = make_banana_target();
  const Vector truth = grid_expectation(target, options.truth_grid.lower, options.truth_grid.upper,
                                        options.truth_grid.points_per_axis);
  std::vector<Table1Cell> cells;
  for (auto t_train : options.train_steps) {
    for (auto n : options.chains) {
      ExperimentConfig cfg;
      cfg.algorithm = Algorithm::both;
      cfg.sampler.chains = n;
      cfg.sampler.samples = options.samples;
      cfg.sampler.train_steps = t_train;
      cfg.sampler.stop_step.reset();
      cfg.sampler.epsilon = options.epsilon;
      cfg.sampler.activation = options.activation;
      cfg.sampler.policy = options.parallel ? ExecutionPolicy::parallel : ExecutionPolicy::serial;
      cfg.init.sigma = options.sigma;
      cfg.replications = options.replications;
      cfg.base_seed = options.base_seed;
      const auto res = replicate(cfg, target, truth);
      cells.push_back({n, t_train, res.report.paim->mse, res.report.ipc->mse, *res.report.reduction_percent});
    }
  }
  return cells;
}

std::string format_table1(const Table1Options& options, const std::vector<Table1Cell>& cells) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "MSE reduction of PAIM w.r.t. IPC (L=" << options.samples << ", R=" << options.replications << ")\n";
  out << "T_train";
  for (auto n : options.chains) out << "\tN=" << n;
  out << '\n';
  out.setf(std::ios::fixed);
  out.precision(2);
  for (auto t : options.train_steps) {
    out << t;
    for (auto n : options.chains)
      for (const auto& c : cells)
        if (c.chains == n && c.train_steps == t) out << '\t' << c.reduction_percent << '%';
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
  out.precision(6);
  out << "\nN\tT_train\tMSE_PAIM\tMSE_IPC\n";
  for (const auto& c : cells)
    out << c.chains << '\t' << c.train_steps << '\t' << c.mse_paim << '\t' << c.mse_ipc << '\n';
  return out.str();
}

}  // namespace paim
