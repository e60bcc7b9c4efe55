#include "reference.hpp"

#include <cmath>

namespace osc::reference {

double laguerre_direct(unsigned n, unsigned k, double x) {
  // Extended precision: the alternating terms cancel heavily for x > 1.
  long double sum = 0.0L;
  for (unsigned i = 0; i <= n; ++i) {
    long double binom = 1.0L;  // C(n+k, n-i)
    for (unsigned m = 1; m <= n - i; ++m) binom = binom * (k + i + m) / m;
    long double term = binom;
    for (unsigned m = 1; m <= i; ++m) term = term * x / m;
    sum += (i % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda) {
  int count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : off(i - 1) * off(i - 1);
    q = diag(i) - lambda - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double characteristic_polynomial(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                 double lambda) {
  double prev = 1.0;
  double cur = diag(0) - lambda;
  for (Eigen::Index i = 1; i < diag.size(); ++i) {
    const double next = (diag(i) - lambda) * cur - off(i - 1) * off(i - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  }
  return a;
}

Eigen::MatrixXcd taylor_exponential(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Eigen::MatrixXcd b = a / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace osc::reference
