#pragma once

#include <span>
#include <stdexcept>

namespace parl {

/// Discounted return: sum over t of gamma^t * rewards[t].
inline double discounted_return(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::domain_error("discounted_return: gamma must lie in [0, 1]");
  double total = 0.0;
  double weight = 1.0;
  for (double r : rewards) {
    total += weight * r;
    weight *= gamma;
  }
  return total;
}

}  // namespace parl
