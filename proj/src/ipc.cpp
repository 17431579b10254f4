#include "paim/ipc.hpp"

#include <algorithm>
#include <stdexcept>

namespace paim {

void IpcConfig::validate(std::size_t dim) const {
  if (chains < 1) throw std::invalid_argument("config: need at least one chain");
  if (samples < chains) throw std::invalid_argument("config: sample budget L must be >= N");
  if (!(epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
  if (init.states.size() != chains || init.proposals.size() != chains)
    throw std::invalid_argument("config: initial conditions must cover every chain");
  if (!chain_seeds.empty() && chain_seeds.size() != chains)
    throw std::invalid_argument("config: chain_seeds must list one seed per chain");
  for (std::size_t n = 0; n < chains; ++n)
    if (init.states[n].size() != dim || init.proposals[n].dim() != dim)
      throw std::invalid_argument("config: initial conditions do not match the target dimension");
}

std::vector<std::size_t> IpcConfig::budgets() const {
  const std::size_t per_chain = (samples + chains - 1) / chains;
  std::vector<std::size_t> out(chains);
  std::size_t left = samples;
  for (auto& k : out) {
    k = std::min(per_chain, left);
    left -= k;
  }
  return out;
}

IpcConfig ipc_config_from(const PaimConfig& config) {
  IpcConfig out;
  out.chains = config.chains;
  out.samples = config.samples;
  out.epsilon = config.epsilon;
  out.init = config.init;
  out.seed = config.seed;
  out.policy = config.policy;
  return out;
}

RunRecord run_ipc(const IpcConfig& config, const TargetDensity& target) {
  const std::size_t d = target.dim();
  config.validate(d);
  const std::size_t n_chains = config.chains;
  const auto budgets = config.budgets();

  std::vector<ChainState> chains;
  std::vector<RandomStream> streams;
  for (std::size_t n = 0; n < n_chains; ++n) {
    chains.push_back(make_chain(n, config.init.states[n], target));
    streams.emplace_back(config.chain_seeds.empty() ? derive_seed(config.seed, stream::chain, n)
                                                    : config.chain_seeds[n]);
  }
  const std::vector<MixtureProposal>& proposals = config.init.proposals;

  RunRecord record;
  record.dim = d;
  record.samples.reserve(config.samples);
  RunningMoments pooled(d);

  std::vector<std::size_t> selected;
  std::vector<MhOutcome> outcomes;
  std::vector<bool> active(n_chains);
  for (std::size_t t = 0; record.samples.size() < config.samples; ++t) {
    selected.clear();
    for (std::size_t n = 0; n < n_chains; ++n) {
      active[n] = chains[n].iterations < budgets[n];
      chains[n].active = active[n];
      if (active[n]) selected.push_back(n);
    }
    outcomes.assign(selected.size(), {});
    advance_chains(chains, selected, proposals, target, streams, outcomes, config.policy);
    for (std::size_t i = 0; i < selected.size(); ++i) {
      const ChainState& c = chains[selected[i]];
      record.samples.push_back({t, c.index, c.iterations, c.current, outcomes[i].accepted});
      pooled.push(c.current);
    }
    record.activity.push_back(active);
  }

  record.total_steps = record.activity.size();
  record.budgets = budgets;
  record.cluster_counts.assign(n_chains, 0);
  record.final_proposals = proposals;
  record.global_mean = pooled.mean();
  record.global_covariance = pooled.covariance(config.epsilon);
  return record;
}

}  // namespace paim
