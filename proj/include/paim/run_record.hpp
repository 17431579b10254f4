#pragma once

#include <cstddef>
#include <vector>

#include "paim/gaussian.hpp"
#include "paim/mixture.hpp"

namespace paim {

struct SampleRecord {
  std::size_t step = 0;       // scheduler step t
  std::size_t chain = 0;      // chain index n (0-based)
  std::size_t iteration = 0;  // k_n after this iteration (1-based)
  Vector x;
  bool accepted = false;
};

// Output of one sampler run; shared by the adaptive and the frozen samplers.
struct RunRecord {
  std::size_t dim = 0;
  std::vector<SampleRecord> samples;           // theta_1..theta_L in generation order
  std::vector<std::vector<bool>> activity;     // activity[t][n]: chain n in the active set at step t
  std::vector<std::size_t> budgets;            // K_n, iterations each chain performed
  std::size_t total_steps = 0;                 // steps executed, == activity.size()
  std::vector<MixtureProposal> final_proposals;
  Vector global_mean;                          // shared global estimate
  CovarianceMatrix global_covariance;          // ... and its regularized covariance
  std::vector<std::size_t> cluster_counts;     // m_n at the end of the run

  std::size_t accepted_count() const;
  double acceptance_rate() const;
  std::size_t final_active_count() const;

  // Sample mean of the returned states. With discard_burn_in, each chain's
  // first ceil(K_n / 5) states are left out.
  Vector estimate_mean(bool discard_burn_in = false) const;
};

}  // namespace paim
