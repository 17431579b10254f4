#pragma once

#include <cstdint>
#include <vector>

#include "paim/chain_kernel.hpp"
#include "paim/paim.hpp"
#include "paim/run_record.hpp"
#include "paim/targets.hpp"

namespace paim {

// Independent parallel chains with frozen initial proposals.
struct IpcConfig {
  std::size_t chains = 1;
  std::size_t samples = 1;
  double epsilon = 0.4;  // only regularizes the reported pooled covariance
  InitialConditions init;
  std::uint64_t seed = 0;
  ExecutionPolicy policy = ExecutionPolicy::serial;
  // Explicit per-chain stream seeds; empty derives them from `seed`.
  std::vector<std::uint64_t> chain_seeds;

  void validate(std::size_t dim) const;
  // ceil(L / N) per chain, with trailing chains truncated so the sum is L.
  std::vector<std::size_t> budgets() const;
};

IpcConfig ipc_config_from(const PaimConfig& config);

// Every chain runs its budget with the initial proposal. Per step, each chain
// with budget left performs one iteration in ascending index order; streams
// are derived exactly as in run_paim, so a seed-matched frozen adaptive run
// reproduces the same per-chain sequences.
RunRecord run_ipc(const IpcConfig& config, const TargetDensity& target);

}  // namespace paim
