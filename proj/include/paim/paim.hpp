#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "paim/chain_kernel.hpp"
#include "paim/mixture.hpp"
#include "paim/moments.hpp"
#include "paim/run_record.hpp"
#include "paim/targets.hpp"

namespace paim {

enum class ActivationRule {
  floor,  // a_n = floor(N m_n / sum m): chains with small relative counts sleep
  ceil,   // a_n = ceil(N m_n / sum m): literal rule, never deactivates a chain with m_n >= 1
};

struct InitialConditions {
  std::vector<Vector> states;               // x_{n,0}
  std::vector<MixtureProposal> proposals;   // psi_n at t = 0

  std::size_t chains() const { return states.size(); }
};

// Both components of chain n get covariance sigma^2 I.
InitialConditions isotropic_initial_conditions(std::vector<Vector> states,
                                               std::span<const Vector> global_means,
                                               std::span<const Vector> local_means, double sigma);

struct PaimConfig {
  std::size_t chains = 1;                      // N
  std::size_t samples = 1;                     // L
  std::int64_t train_steps = 1;                // T_train
  std::optional<std::int64_t> stop_step;       // T_stop; nullopt never stops adapting
  double epsilon = 0.4;
  ActivationRule activation = ActivationRule::floor;
  InitialConditions init;
  std::uint64_t seed = 0;
  bool discard_burn_in = false;                // estimator input only; the record keeps everything
  ExecutionPolicy policy = ExecutionPolicy::serial;

  // Throws std::invalid_argument on any violation. stop_step == 0 is accepted
  // regardless of train_steps and freezes the proposals entirely.
  void validate(std::size_t dim) const;

  bool assigning_at(std::int64_t t) const { return !stop_step || t < *stop_step; }
  bool adapting_at(std::int64_t t) const { return t > train_steps && assigning_at(t); }
};

// Index of the nearest mean in Euclidean distance, lowest index on ties.
std::size_t nearest_mean(std::span<const double> z, std::span<const Vector> means);

// Pushes every fresh state into the cluster of its nearest local mean. All N
// means take part, including those of inactive chains.
void assign(std::span<const Vector> fresh, std::span<const Vector> local_means,
            std::span<RunningMoments> clusters);

// New proposals: the global component from `global` (identical object for
// every chain), the local component of chain n from clusters[n].
std::vector<MixtureProposal> adapt(const RunningMoments& global, std::span<const RunningMoments> clusters,
                                   double epsilon);

// a_n for every chain; N is counts.size().
std::vector<std::size_t> activation_scores(std::span<const std::size_t> counts, ActivationRule rule);

// Chain n is active iff a_n > 0. If that leaves no chain, the chain with the
// largest count (lowest index on ties) is switched on.
std::vector<bool> activation(std::span<const std::size_t> counts, ActivationRule rule);

// Read-only view of the scheduler after one step, for diagnostics and tests.
struct StepSnapshot {
  std::int64_t step = 0;
  std::size_t samples_so_far = 0;      // l
  std::size_t fresh_count = 0;         // |Z|
  bool assigned = false;
  bool adapted = false;
  bool finished = false;               // budget reached inside this step
  std::span<const ChainState> chains;
  std::span<const MixtureProposal> proposals;
  std::span<const RunningMoments> clusters;
  const RunningMoments* global = nullptr;
  std::vector<bool> active_now;        // A_t
  std::vector<bool> active_next;       // A_{t+1}
};

using StepObserver = std::function<void(const StepSnapshot&)>;

// Runs the adaptive sampler until exactly config.samples states are produced.
RunRecord run_paim(const PaimConfig& config, const TargetDensity& target, const StepObserver& observer = {});

}  // namespace paim
