#include "osclab/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace osc {
namespace {

void require_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

void require_localized(const OccupationVector& alpha, std::size_t count, std::size_t modes,
                       const char* where) {
  require_same_size(alpha.size(), modes, where);
  if (!alpha.supported_in_prefix(count)) {
    throw std::invalid_argument(std::string(where) +
                                ": occupation vector excites modes outside the localized set");
  }
}

double tail_norm2(const ModeVector& z, std::size_t count) {
  const auto c = static_cast<Eigen::Index>(std::min(count, z.size()));
  return z.amplitudes.tail(z.amplitudes.size() - c).squaredNorm();
}

// eta = 1_S e^{2it gamma} V f, xi = 1_S V g, plus C_f C_g.
struct LocalizedPair {
  ModeVector eta;
  ModeVector xi;
  double constant = 1.0;
  std::size_t count = 0;
};

LocalizedPair localized_pair(const SpectralData& spec, double lambda0, const ComplexField& f,
                             const ComplexField& g, double t) {
  LocalizedPair out;
  out.count = localized_count(spec, lambda0);
  const ModeVector vf = v_map(spec, f);
  const ModeVector vg = v_map(spec, g);
  out.constant = std::exp(-0.25 * (tail_norm2(vf, out.count) + tail_norm2(vg, out.count)));
  out.eta = mask_modes(rotate_modes(spec, vf, t), out.count);
  out.xi = mask_modes(vg, out.count);
  return out;
}

}  // namespace

Complex matrix_element_1d(unsigned n, unsigned k, Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return n == k ? Complex(1.0) : Complex(0.0);
  const double x = 0.5 * r * r;
  const unsigned lo = std::min(n, k);
  const unsigned d = std::max(n, k) - lo;
  const double lag = laguerre(lo, d, x);
  if (lag == 0.0) return 0.0;

  const double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0)) +
                         d * std::log(r / std::numbers::sqrt2) - 0.5 * x;
  // Unit phase of i conj(z) above the diagonal and of i z below it.
  const Complex unit = n <= k ? Complex(0.0, 1.0) * std::conj(z) / r : Complex(0.0, 1.0) * z / r;
  return std::exp(log_mag) * lag * std::pow(unit, static_cast<int>(d));
}

double diagonal_element_1d(unsigned n, Complex z) {
  const double x = 0.5 * std::norm(z);
  return laguerre(n, 0, x) * std::exp(-0.5 * x);
}

WeylDescriptor WeylDescriptor::identity(std::size_t modes) {
  WeylDescriptor w;
  w.displacement = ModeVector(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(modes)));
  return w;
}

WeylDescriptor WeylDescriptor::describe(const SpectralData& spec, const ComplexField& f) {
  WeylDescriptor w;
  w.displacement = v_map(spec, f);
  return w;
}

WeylDescriptor compose(const WeylDescriptor& a, const WeylDescriptor& b) {
  require_same_size(a.displacement.size(), b.displacement.size(), "compose");
  WeylDescriptor out;
  out.displacement = ModeVector(a.displacement.amplitudes + b.displacement.amplitudes);
  out.phase = a.phase + b.phase - 0.5 * inner(a.displacement, b.displacement).imag();
  return out;
}

Complex matrix_element(const OccupationVector& alpha, const OccupationVector& beta,
                       const WeylDescriptor& w) {
  require_same_size(alpha.size(), w.displacement.size(), "matrix_element");
  require_same_size(beta.size(), w.displacement.size(), "matrix_element");
  Complex product = std::polar(1.0, w.phase);
  double vacuum_norm2 = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const Complex z = w.displacement.amplitudes(static_cast<Eigen::Index>(j));
    if (alpha.counts[j] == 0 && beta.counts[j] == 0) {
      vacuum_norm2 += std::norm(z);
    } else {
      product *= matrix_element_1d(alpha.counts[j], beta.counts[j], z);
    }
  }
  return product * std::exp(-0.25 * vacuum_norm2);
}

Complex matrix_element(const SpectralData& spec, const OccupationVector& alpha,
                       const OccupationVector& beta, const ComplexField& f) {
  return matrix_element(alpha, beta, WeylDescriptor::describe(spec, f));
}

double diagonal_expectation(const OccupationVector& alpha, const ModeVector& z) {
  require_same_size(alpha.size(), z.size(), "diagonal_expectation");
  double product = std::exp(-0.25 * z.amplitudes.squaredNorm());
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha.counts[j] != 0) {
      product *= laguerre(alpha.counts[j], 0,
                          0.5 * std::norm(z.amplitudes(static_cast<Eigen::Index>(j))));
    }
  }
  return product;
}

double diagonal_defect(const OccupationVector& alpha, const ModeVector& z) {
  require_same_size(alpha.size(), z.size(), "diagonal_defect");
  // Track every factor as 1 + u; (1 + u)(1 + v) - 1 = u + v + uv.
  double acc = std::expm1(-0.25 * z.amplitudes.squaredNorm());
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha.counts[j] != 0) {
      const double u =
          laguerre_minus_one(alpha.counts[j], 0.5 * std::norm(z.amplitudes(static_cast<Eigen::Index>(j))));
      acc = acc + u + acc * u;
    }
  }
  return -acc;
}

RestrictionData restriction_constant(const SpectralData& spec, double lambda0,
                                     const ComplexField& f) {
  RestrictionData out;
  out.lambda0 = lambda0;
  out.count = localized_count(spec, lambda0);
  out.constant = std::exp(-0.25 * tail_norm2(v_map(spec, f), out.count));
  return out;
}

double lr_weyl_commutator_norm(const SpectralData& spec, double lambda0, const ComplexField& f,
                               const ComplexField& g, double t) {
  const LocalizedPair pair = localized_pair(spec, lambda0, f, g, t);
  const double phi = inner(pair.eta, pair.xi).imag();
  return pair.constant * 2.0 * std::abs(std::sin(0.5 * phi));
}

Eigen::Matrix2d pq_commutator_matrix(const SpectralData& spec, double lambda0, SiteIndex x,
                                     SiteIndex y, double t) {
  if (!spec.has_modes()) throw std::invalid_argument("pq_commutator_matrix: no modes stored");
  if (x >= spec.size() || y >= spec.size()) {
    throw std::invalid_argument("pq_commutator_matrix: site outside box");
  }
  const auto count = static_cast<Eigen::Index>(localized_count(spec, lambda0));
  const auto xi = static_cast<Eigen::Index>(x);
  const auto yi = static_cast<Eigen::Index>(y);
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (Eigen::Index j = 0; j < count; ++j) {
    const double w = spec.modes(xi, j) * spec.modes(yi, j);
    const double gam = spec.gammas(j);
    const double s = std::sin(2.0 * t * gam);
    const double c = std::cos(2.0 * t * gam);
    m(0, 0) -= w * s / gam;
    m(0, 1) += w * c;
    m(1, 0) -= w * c;
    m(1, 1) -= w * gam * s;
  }
  return m;
}

Eigen::Matrix2d pq_commutator_envelope(const SpectralData& spec, double lambda0, SiteIndex x,
                                       SiteIndex y) {
  Eigen::Matrix2d m;
  const double q0 = eigencorrelator(spec, lambda0, 0, x, y).value;
  m(0, 0) = eigencorrelator(spec, lambda0, -1, x, y).value;
  m(0, 1) = q0;
  m(1, 0) = q0;
  m(1, 1) = eigencorrelator(spec, lambda0, 1, x, y).value;
  return m;
}

Complex dynamic_correlation(const SpectralData& spec, double lambda0, const OccupationVector& alpha,
                            const ComplexField& f, const ComplexField& g, double t) {
  const LocalizedPair pair = localized_pair(spec, lambda0, f, g, t);
  require_localized(alpha, pair.count, spec.size(), "dynamic_correlation");
  const ModeVector sum(pair.eta.amplitudes + pair.xi.amplitudes);
  const double phi = inner(pair.eta, pair.xi).imag();
  const Complex joint = std::polar(1.0, -0.5 * phi) * diagonal_expectation(alpha, sum);
  const double separate = diagonal_expectation(alpha, pair.eta) * diagonal_expectation(alpha, pair.xi);
  return pair.constant * (joint - separate);
}

Complex correlation_series(const SpectralData& spec, double lambda0, const OccupationVector& alpha,
                           const ComplexField& f, const ComplexField& g, double t,
                           unsigned beta_cutoff) {
  const LocalizedPair pair = localized_pair(spec, lambda0, f, g, t);
  require_localized(alpha, pair.count, spec.size(), "correlation_series");
  if (beta_cutoff < alpha.max_occupation()) {
    throw std::invalid_argument("correlation_series: cutoff below the occupation of alpha");
  }
  Complex through = 1.0;
  Complex separate = 1.0;
  for (std::size_t j = 0; j < pair.count; ++j) {
    const auto ji = static_cast<Eigen::Index>(j);
    const Complex eta = pair.eta.amplitudes(ji);
    const Complex xi = pair.xi.amplitudes(ji);
    if (eta == Complex(0.0) && xi == Complex(0.0)) continue;
    const unsigned a = alpha.counts[j];
    Complex term = 0.0;
    for (unsigned b = 0; b <= beta_cutoff; ++b) {
      term += matrix_element_1d(a, b, eta) * matrix_element_1d(b, a, xi);
    }
    through *= term;
    separate *= diagonal_element_1d(a, eta) * diagonal_element_1d(a, xi);
  }
  return pair.constant * (through - separate);
}

ComplexField localized_remainder(const SpectralData& spec, const BoxGeometry& box, double lambda0,
                                 const ComplexField& f, const SiteSet& region, int n, double t) {
  require_same_size(box.size(), spec.size(), "localized_remainder");
  const SiteSet inside = neighborhood(box, region, n);
  ComplexField w = project_localized(spec, lambda0, evolve(spec, f, t));
  for (SiteIndex x : inside) w[x] = 0.0;
  return project_localized(spec, lambda0, w);
}

namespace {

void require_support_in(const ComplexField& f, const SiteSet& region, const char* where) {
  for (SiteIndex x : f.support()) {
    if (!region.contains(x)) {
      throw std::invalid_argument(std::string(where) + ": f is supported outside the region");
    }
  }
}

}  // namespace

double quasi_locality_error(const SpectralData& spec, const BoxGeometry& box, double lambda0,
                            const OccupationVector& alpha, const ComplexField& f,
                            const SiteSet& region, int n, double t) {
  require_support_in(f, region, "quasi_locality_error");
  const RestrictionData restriction = restriction_constant(spec, lambda0, f);
  require_localized(alpha, restriction.count, spec.size(), "quasi_locality_error");
  const ModeVector z = v_map(spec, localized_remainder(spec, box, lambda0, f, region, n, t));
  return restriction.constant * std::sqrt(std::max(0.0, 2.0 * diagonal_defect(alpha, z)));
}

double quasi_locality_bound(const SpectralData& spec, const BoxGeometry& box, double lambda0,
                            const ComplexField& f, const SiteSet& region, int n, double t,
                            unsigned kappa) {
  require_support_in(f, region, "quasi_locality_bound");
  const ModeVector z = v_map(spec, localized_remainder(spec, box, lambda0, f, region, n, t));
  return std::sqrt(2.0 * (kappa + 1.0)) * z.amplitudes.norm();
}

}  // namespace osc
