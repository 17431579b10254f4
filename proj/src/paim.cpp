#include "paim/paim.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace paim {

InitialConditions isotropic_initial_conditions(std::vector<Vector> states,
                                               std::span<const Vector> global_means,
                                               std::span<const Vector> local_means, double sigma) {
  if (states.size() != global_means.size() || states.size() != local_means.size())
    throw std::invalid_argument("initial conditions: one state and two means per chain required");
  if (!(sigma > 0.0)) throw std::invalid_argument("initial conditions: sigma must be positive");
  InitialConditions init;
  init.proposals.reserve(states.size());
  for (std::size_t n = 0; n < states.size(); ++n) {
    const std::size_t d = states[n].size();
    const auto cov = CovarianceMatrix::isotropic(d, sigma * sigma);
    init.proposals.emplace_back(GaussianComponent::make(global_means[n], cov),
                                GaussianComponent::make(local_means[n], cov));
  }
  init.states = std::move(states);
  return init;
}

void PaimConfig::validate(std::size_t dim) const {
  if (chains < 1) throw std::invalid_argument("config: need at least one chain");
  if (samples < chains) throw std::invalid_argument("config: sample budget L must be >= N");
  if (!(epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
  if (train_steps < 0) throw std::invalid_argument("config: T_train must be non-negative");
  if (stop_step && *stop_step != 0 && train_steps >= *stop_step)
    throw std::invalid_argument("config: T_train must be smaller than T_stop");
  if (stop_step && *stop_step < 0) throw std::invalid_argument("config: T_stop must be non-negative");
  if (init.states.size() != chains || init.proposals.size() != chains)
    throw std::invalid_argument("config: initial conditions must cover all " + std::to_string(chains) +
                                " chains");
  for (std::size_t n = 0; n < chains; ++n)
    if (init.states[n].size() != dim || init.proposals[n].dim() != dim)
      throw std::invalid_argument("config: initial conditions do not match the target dimension");
}

std::size_t nearest_mean(std::span<const double> z, std::span<const Vector> means) {
  if (means.empty()) throw std::invalid_argument("nearest_mean: no means");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < means.size(); ++n) {
    const double dist = squared_distance(z, means[n]);
    if (dist < best_dist) {
      best_dist = dist;
      best = n;
    }
  }
  return best;
}

void assign(std::span<const Vector> fresh, std::span<const Vector> local_means,
            std::span<RunningMoments> clusters) {
  if (clusters.size() != local_means.size())
    throw std::invalid_argument("assign: one cluster per local mean required");
  for (const auto& z : fresh) clusters[nearest_mean(z, local_means)].push(z);
}

std::vector<MixtureProposal> adapt(const RunningMoments& global, std::span<const RunningMoments> clusters,
                                   double epsilon) {
  const auto shared = GaussianComponent::make(global.mean(), global.covariance(epsilon));
  std::vector<MixtureProposal> out;
  out.reserve(clusters.size());
  for (const auto& cluster : clusters)
    out.emplace_back(shared, GaussianComponent::make(cluster.mean(), cluster.covariance(epsilon)));
  return out;
}

std::vector<std::size_t> activation_scores(std::span<const std::size_t> counts, ActivationRule rule) {
  std::size_t total = 0;
  for (auto m : counts) total += m;
  if (total == 0) throw std::invalid_argument("activation: cluster counts sum to zero");
  const std::size_t n_chains = counts.size();
  std::vector<std::size_t> scores(n_chains);
  for (std::size_t n = 0; n < n_chains; ++n) {
    const std::size_t num = n_chains * counts[n];
    scores[n] = rule == ActivationRule::floor ? num / total : (num + total - 1) / total;
  }
  return scores;
}

std::vector<bool> activation(std::span<const std::size_t> counts, ActivationRule rule) {
  const auto scores = activation_scores(counts, rule);
  std::vector<bool> active(scores.size());
  bool any = false;
  for (std::size_t n = 0; n < scores.size(); ++n) any |= (active[n] = scores[n] > 0);
  if (!any) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < counts.size(); ++n)
      if (counts[n] > counts[best]) best = n;
    active[best] = true;
  }
  return active;
}

RunRecord run_paim(const PaimConfig& config, const TargetDensity& target, const StepObserver& observer) {
  const std::size_t d = target.dim();
  config.validate(d);
  const std::size_t n_chains = config.chains;

  std::vector<ChainState> chains;
  std::vector<RandomStream> streams;
  std::vector<RunningMoments> clusters(n_chains, RunningMoments(d));
  chains.reserve(n_chains);
  streams.reserve(n_chains);
  for (std::size_t n = 0; n < n_chains; ++n) {
    chains.push_back(make_chain(n, config.init.states[n], target));
    streams.emplace_back(derive_seed(config.seed, stream::chain, n));
    // x_{n,0} is the first member of cluster n, so m_n starts at 1.
    clusters[n].push(config.init.states[n]);
  }
  std::vector<MixtureProposal> proposals = config.init.proposals;
  RunningMoments global(d);

  RunRecord record;
  record.dim = d;
  record.samples.reserve(config.samples);

  std::vector<bool> active(n_chains, true);
  std::vector<std::size_t> selected;
  std::vector<MhOutcome> outcomes;
  std::vector<Vector> fresh;
  std::vector<Vector> local_means(n_chains);
  std::size_t ell = 0;

  for (std::int64_t t = 0;; ++t) {
    selected.clear();
    for (std::size_t n = 0; n < n_chains && ell + selected.size() < config.samples; ++n)
      if (active[n]) selected.push_back(n);
    for (std::size_t n = 0; n < n_chains; ++n) chains[n].active = active[n];

    outcomes.assign(selected.size(), {});
    advance_chains(chains, selected, proposals, target, streams, outcomes, config.policy);

    fresh.clear();
    const bool assigning = config.assigning_at(t);
    for (std::size_t i = 0; i < selected.size(); ++i) {
      const ChainState& c = chains[selected[i]];
      record.samples.push_back({static_cast<std::size_t>(t), c.index, c.iterations, c.current,
                                outcomes[i].accepted});
      fresh.push_back(c.current);
      if (assigning) global.push(c.current);
    }
    ell += selected.size();
    record.activity.push_back(active);

    const bool finished = ell >= config.samples;
    StepSnapshot snap;
    snap.step = t;
    snap.fresh_count = fresh.size();
    snap.finished = finished;
    snap.active_now = active;

    if (!finished) {
      if (assigning) {
        for (std::size_t n = 0; n < n_chains; ++n) local_means[n] = proposals[n].local().mean;
        assign(fresh, local_means, clusters);
        snap.assigned = true;
      }
      if (config.adapting_at(t)) {
        proposals = adapt(global, clusters, config.epsilon);
        std::vector<std::size_t> counts(n_chains);
        for (std::size_t n = 0; n < n_chains; ++n) counts[n] = clusters[n].count();
        active = activation(counts, config.activation);
        snap.adapted = true;
      }
    }

    if (observer) {
      snap.samples_so_far = ell;
      snap.chains = chains;
      snap.proposals = proposals;
      snap.clusters = clusters;
      snap.global = &global;
      snap.active_next = active;
      observer(snap);
    }
    if (finished) break;
  }

  record.total_steps = record.activity.size();
  record.budgets.resize(n_chains);
  record.cluster_counts.resize(n_chains);
  for (std::size_t n = 0; n < n_chains; ++n) {
    record.budgets[n] = chains[n].iterations;
    record.cluster_counts[n] = clusters[n].count();
  }
  record.final_proposals = std::move(proposals);
  record.global_mean = global.mean();
  record.global_covariance = global.covariance(config.epsilon);
  return record;
}

}  // namespace paim
