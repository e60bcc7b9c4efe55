#include "osclab/eigensolver.hpp"

#include "osclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace osc {
namespace {

constexpr int kMaxSweepsPerEigenvalue = 60;
constexpr double kSymmetryTolerance = 1e-12;

// Reduces the symmetric matrix held in v to tridiagonal form. On return d holds
// the diagonal, e the subdiagonal in e[1..n-1], and v the accumulated
// orthogonal transformation when accumulate is set.
void householder_tridiagonalize(Eigen::MatrixXd& v, Eigen::VectorXd& d, Eigen::VectorXd& e,
                                bool accumulate) {
  const Eigen::Index n = v.rows();
  d.resize(n);
  e.setZero(n);
  for (Eigen::Index j = 0; j < n; ++j) d(j) = v(n - 1, j);

  for (Eigen::Index i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (Eigen::Index k = 0; k < i; ++k) scale += std::abs(d(k));
    if (scale == 0.0) {
      e(i) = d(i - 1);
      for (Eigen::Index j = 0; j < i; ++j) {
        d(j) = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (Eigen::Index k = 0; k < i; ++k) {
        d(k) /= scale;
        h += d(k) * d(k);
      }
      double f = d(i - 1);
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;
      for (Eigen::Index j = 0; j < i; ++j) e(j) = 0.0;

      for (Eigen::Index j = 0; j < i; ++j) {
        f = d(j);
        v(j, i) = f;
        g = e(j) + v(j, j) * f;
        for (Eigen::Index k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d(k);
          e(k) += v(k, j) * f;
        }
        e(j) = g;
      }
      f = 0.0;
      for (Eigen::Index j = 0; j < i; ++j) {
        e(j) /= h;
        f += e(j) * d(j);
      }
      const double hh = f / (h + h);
      for (Eigen::Index j = 0; j < i; ++j) e(j) -= hh * d(j);
      for (Eigen::Index j = 0; j < i; ++j) {
        f = d(j);
        g = e(j);
        for (Eigen::Index k = j; k <= i - 1; ++k) v(k, j) -= (f * e(k) + g * d(k));
        d(j) = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d(i) = h;
  }

  if (!accumulate) {
    for (Eigen::Index j = 0; j < n; ++j) d(j) = v(j, j);
    e(0) = 0.0;
    return;
  }

  for (Eigen::Index i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d(i + 1);
    if (h != 0.0) {
      for (Eigen::Index k = 0; k <= i; ++k) d(k) = v(k, i + 1) / h;
      for (Eigen::Index j = 0; j <= i; ++j) {
        double g = 0.0;
        for (Eigen::Index k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (Eigen::Index k = 0; k <= i; ++k) v(k, j) -= g * d(k);
      }
    }
    for (Eigen::Index k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j) = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e(0) = 0.0;
}

// Implicit QL with Wilkinson-type shifts on the tridiagonal (d, e); applies the
// rotations to v when vectors are requested. Returns the largest sweep count.
int implicit_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd* v) {
  const Eigen::Index n = d.size();
  for (Eigen::Index i = 1; i < n; ++i) e(i - 1) = e(i);
  e(n - 1) = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;
  int worst = 0;
  for (Eigen::Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
    Eigen::Index m = l;
    while (m < n) {
      if (std::abs(e(m)) <= eps * tst1) break;
      ++m;
    }

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxSweepsPerEigenvalue) {
          std::ostringstream msg;
          msg << "implicit QL failed to converge for eigenvalue " << l << " of " << n
              << " after " << kMaxSweepsPerEigenvalue << " sweeps (|e| = " << std::abs(e(l))
              << ", threshold " << eps * tst1 << ")";
          throw NumericError(msg.str());
        }
        double g = d(l);
        double p = (d(l + 1) - g) / (2.0 * e(l));
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const double dl1 = d(l + 1);
        double h = g - d(l);
        for (Eigen::Index i = l + 2; i < n; ++i) d(i) -= h;
        f += h;

        p = d(m);
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e(l + 1);
        double s = 0.0, s2 = 0.0;
        for (Eigen::Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = std::hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          if (v != nullptr) {
            for (Eigen::Index k = 0; k < n; ++k) {
              h = (*v)(k, i + 1);
              (*v)(k, i + 1) = s * (*v)(k, i) + c * h;
              (*v)(k, i) = c * (*v)(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (std::abs(e(l)) > eps * tst1);
      worst = std::max(worst, iter);
    }
    d(l) += f;
    e(l) = 0.0;
  }
  return worst;
}

}  // namespace

double symmetry_defect(const Eigen::MatrixXd& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

SymmetricEigenResult symmetric_eigen(const Eigen::MatrixXd& a, bool compute_vectors) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("symmetric_eigen: matrix must be square");
  }
  SymmetricEigenResult out;
  const Eigen::Index n = a.rows();
  if (n == 0) return out;
  const double defect = symmetry_defect(a);
  if (defect > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "symmetric_eigen: input is not symmetric (relative defect " << defect << ")";
    throw std::invalid_argument(msg.str());
  }

  Eigen::MatrixXd v = a;
  Eigen::VectorXd d, e;
  householder_tridiagonalize(v, d, e, compute_vectors);
  out.max_iterations = implicit_ql(d, e, compute_vectors ? &v : nullptr);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return d(i) < d(j); });
  out.eigenvalues.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) out.eigenvalues(j) = d(order[static_cast<std::size_t>(j)]);
  if (compute_vectors) {
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace osc
