#include "osclab/fit.hpp"

#include "osclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace osc {

DecayFit fit_exponential(const EnsembleResult& result, const std::string& quantity, double lo,
                         double hi) {
  std::vector<double> xs, ys;
  for (const ResultRow& row : result.select(quantity)) {
    if (row.key < lo || row.key > hi) continue;
    if (!(row.stat.mean > 0.0) || row.stat.count == 0) {
      throw RangeError("fit_exponential: nonpositive mean for " + quantity + " at key " +
                       std::to_string(row.key));
    }
    xs.push_back(row.key);
    ys.push_back(std::log(row.stat.mean));
  }
  if (xs.size() < 4) {
    throw RangeError("fit_exponential: fewer than four keys of " + quantity + " in range");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw RangeError("fit_exponential: keys in range are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  DecayFit fit;
  fit.c_hat = std::exp(intercept);
  fit.mu_hat = -slope;
  // Flat data (up to rounding in the means) is explained completely by a flat line.
  const double flat = 1e-24 * n * (my * my + 1.0);
  fit.r_squared = syy <= flat ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.lo = lo;
  fit.hi = hi;
  fit.points = xs.size();
  return fit;
}

}  // namespace osc
