#include "paim/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace paim {

MixtureProposal::MixtureProposal(GaussianComponent global, GaussianComponent local)
    : global_(std::move(global)), local_(std::move(local)) {
  if (global_.mean.size() != local_.mean.size())
    throw std::invalid_argument("MixtureProposal: components differ in dimension");
}

double MixtureProposal::log_pdf(std::span<const double> x) const {
  const double a = global_.log_pdf(x);
  const double b = local_.log_pdf(x);
  const double top = std::max(a, b);
  if (top == -std::numeric_limits<double>::infinity()) return top;
  constexpr double kLogHalf = -0.69314718055994530942;
  return kLogHalf + top + std::log(std::exp(a - top) + std::exp(b - top));
}

Vector MixtureProposal::sample(RandomStream& rng) const {
  const bool pick_global = rng.uniform() < 0.5;
  return pick_global ? global_.sample(rng) : local_.sample(rng);
}

}  // namespace paim
