#pragma once

#include <span>

#include "paim/gaussian.hpp"
#include "paim/random.hpp"

namespace paim {

// Equal-weight two-component Gaussian mixture: the global component is
// adapted from every generated state, the local one from the chain's cluster.
class MixtureProposal {
 public:
  MixtureProposal(GaussianComponent global, GaussianComponent local);

  const GaussianComponent& global() const { return global_; }
  const GaussianComponent& local() const { return local_; }
  std::size_t dim() const { return global_.mean.size(); }

  // log(exp(lg1)/2 + exp(lg2)/2), max-shifted.
  double log_pdf(std::span<const double> x) const;

  // One uniform for the coin, then dim() normals from the chosen component.
  Vector sample(RandomStream& rng) const;

 private:
  GaussianComponent global_;
  GaussianComponent local_;
};

}  // namespace paim
