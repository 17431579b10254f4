#include "paim/chain_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

namespace paim {

ChainState make_chain(std::size_t index, Vector initial, const TargetDensity& target) {
  ChainState c;
  c.index = index;
  c.log_target = target.log_density(initial);
  c.current = std::move(initial);
  return c;
}

double log_acceptance(double log_target_proposed, double log_proposal_current,
                      double log_target_current, double log_proposal_proposed) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double numerator = log_target_proposed + log_proposal_current;
  const double denominator = log_target_current + log_proposal_proposed;
  if (numerator == kNegInf && denominator == kNegInf) return 0.0;
  const double r = numerator - denominator;
  if (std::isnan(r)) throw std::domain_error("log_acceptance: undefined ratio");
  return std::min(0.0, r);
}

MhOutcome mh_step(ChainState& chain, const MixtureProposal& proposal, const TargetDensity& target,
                  RandomStream& rng) {
  Vector candidate = proposal.sample(rng);
  const double log_target_candidate = target.log_density(candidate);
  const double log_alpha = log_acceptance(log_target_candidate, proposal.log_pdf(chain.current),
                                          chain.log_target, proposal.log_pdf(candidate));
  const bool accept = std::log(rng.uniform()) < log_alpha;
  if (accept) {
    chain.current = std::move(candidate);
    chain.log_target = log_target_candidate;
  }
  ++chain.iterations;
  return {accept, log_alpha};
}

void advance_chains(std::span<ChainState> chains, std::span<const std::size_t> selected,
                    std::span<const MixtureProposal> proposals, const TargetDensity& target,
                    std::span<RandomStream> streams, std::span<MhOutcome> outcomes,
                    ExecutionPolicy policy) {
  if (outcomes.size() != selected.size())
    throw std::invalid_argument("advance_chains: outcome buffer size mismatch");
  const auto count = static_cast<std::ptrdiff_t>(selected.size());
  if (policy == ExecutionPolicy::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const std::size_t j = selected[i];
      outcomes[i] = mh_step(chains[j], proposals[j], target, streams[j]);
    }
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::size_t j = selected[i];
    try {
      outcomes[i] = mh_step(chains[j], proposals[j], target, streams[j]);
    } catch (...) {
#pragma omp critical(paim_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace paim
