// fit.hpp - log-linear decay fits on ensemble averages.
#pragma once

#include "osclab/ensemble.hpp"

#include <cstddef>
#include <string>

namespace osc {

struct DecayFit {
  double c_hat = 0.0;
  double mu_hat = 0.0;  // decay rate per unit key (distance or n)
  double r_squared = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

// Least squares of log(mean) against key over rows of `quantity` with key in
// [lo, hi]: mean ~ c_hat exp(-mu_hat key). Throws RangeError unless at least
// four keys fall in range and every mean there is positive.
DecayFit fit_exponential(const EnsembleResult& result, const std::string& quantity, double lo,
                         double hi);

}  // namespace osc
