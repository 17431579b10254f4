#include "paim/run_record.hpp"

#include <stdexcept>

namespace paim {

std::size_t RunRecord::accepted_count() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.accepted ? 1 : 0;
  return n;
}

double RunRecord::acceptance_rate() const {
  if (samples.empty()) return 0.0;
  return static_cast<double>(accepted_count()) / static_cast<double>(samples.size());
}

std::size_t RunRecord::final_active_count() const {
  if (activity.empty()) return 0;
  std::size_t n = 0;
  for (bool a : activity.back()) n += a ? 1 : 0;
  return n;
}

Vector RunRecord::estimate_mean(bool discard_burn_in) const {
  Vector sum(dim, 0.0);
  std::size_t used = 0;
  for (const auto& s : samples) {
    if (discard_burn_in) {
      const std::size_t skip = (budgets.at(s.chain) + 4) / 5;
      if (s.iteration <= skip) continue;
    }
    for (std::size_t i = 0; i < dim; ++i) sum[i] += s.x[i];
    ++used;
  }
  if (used == 0) throw std::logic_error("estimate_mean: no samples left to average");
  for (double& v : sum) v /= static_cast<double>(used);
  return sum;
}

}  // namespace paim
