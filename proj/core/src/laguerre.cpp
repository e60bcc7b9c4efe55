#include "osclab/weyl.hpp"

#include <cmath>

namespace osc {

double laguerre(unsigned n, unsigned k, double x) {
  const double a = static_cast<double>(k);
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (unsigned m = 1; m < n; ++m) {
    const double md = static_cast<double>(m);
    const double next = ((2.0 * md + 1.0 + a - x) * cur - (md + a) * prev) / (md + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_minus_one(unsigned n, double x) {
  // Same recurrence written for M_m = L_m^{(0)} - 1.
  if (n == 0) return 0.0;
  double prev = 0.0;
  double cur = -x;
  for (unsigned m = 1; m < n; ++m) {
    const double md = static_cast<double>(m);
    const double next = (-x + (2.0 * md + 1.0 - x) * cur - md * prev) / (md + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace osc
