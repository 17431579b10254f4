#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "paim/mixture.hpp"
#include "paim/random.hpp"
#include "paim/targets.hpp"

namespace paim {

enum class ExecutionPolicy { serial, parallel };

struct ChainState {
  std::size_t index = 0;
  Vector current;
  double log_target = 0.0;  // cached log pi(current)
  std::size_t iterations = 0;
  bool active = true;
};

ChainState make_chain(std::size_t index, Vector initial, const TargetDensity& target);

// log of the independence-sampler acceptance probability,
// min(0, log pi(x') + log psi(x) - log pi(x) - log psi(x')).
// A -inf/-inf ratio resolves to 0 (accept).
double log_acceptance(double log_target_proposed, double log_proposal_current,
                      double log_target_current, double log_proposal_proposed);

struct MhOutcome {
  bool accepted = false;
  double log_alpha = 0.0;
};

// One independence Metropolis-Hastings iteration. Consumes one coin, dim()
// normals and one acceptance uniform from rng; increments chain.iterations.
MhOutcome mh_step(ChainState& chain, const MixtureProposal& proposal, const TargetDensity& target,
                  RandomStream& rng);

// Advances chains[selected[i]] by one iteration each, writing outcomes[i].
// Chains only touch their own state, proposal and stream, so the parallel
// path is bit-identical to the serial one.
void advance_chains(std::span<ChainState> chains, std::span<const std::size_t> selected,
                    std::span<const MixtureProposal> proposals, const TargetDensity& target,
                    std::span<RandomStream> streams, std::span<MhOutcome> outcomes,
                    ExecutionPolicy policy);

}  // namespace paim
