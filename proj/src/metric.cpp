#include "ptchain/metric.hpp"

#include <cmath>

#include "ptchain/angular.hpp"
#include "ptchain/chain.hpp"
#include "ptchain/linalg.hpp"
#include "ptchain/spectral.hpp"

namespace ptchain {
namespace {

void check_metric_spec(const ChainSpec& spec) {
  spec.validate();
  if (!spec.imaginary())
    throw InvalidSpec("the metric construction applies to the imaginary kind");
  if (spec.critical())
    throw EPSingular("the metric degenerates at the exceptional point");
  if (std::abs(spec.gamma) > 1.0)
    throw BrokenPhase("no positive metric exists in the broken phase");
}

double rel_scale(const ComplexMatrix& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

MetricPair metric_operator(const ChainSpec& spec) {
  check_metric_spec(spec);
  const int n = spec.n_sites;
  const double x = std::atanh(spec.gamma);

  ComplexMatrix eta = rotation_operator(n, Complex(0.0, -2.0 * x));
  ComplexMatrix rho = rotation_operator(n, Complex(0.0, -x));
  eta = 0.5 * (eta + eta.adjoint()).eval();
  rho = 0.5 * (rho + rho.adjoint()).eval();

  const BiorthogonalSystem sys = analytic_eigensystem(spec);
  const ComplexMatrix eta_sum = sys.left_vectors * sys.left_vectors.adjoint();
  const double scale = rel_scale(eta);
  if ((eta_sum - eta).cwiseAbs().maxCoeff() > tol::small_n * scale)
    throw NoConvergence("metric routes disagree beyond tolerance");

  const EigenSystem spectrum = hermitian_eigensystem(eta_sum);
  const double top = spectrum.eigenvalues.maxCoeff();
  if (spectrum.eigenvalues.minCoeff() <= -tol::exact * std::max(1.0, top))
    throw NoConvergence("metric failed positive-definiteness certification");
  if (spectrum.eigenvalues.minCoeff() > 1e-13 * top) {
    const ComplexMatrix root =
        spectrum.eigenvectors *
        spectrum.eigenvalues.cwiseSqrt().asDiagonal() *
        spectrum.eigenvectors.adjoint();
    if ((root - rho).cwiseAbs().maxCoeff() > tol::small_n * rel_scale(rho))
      throw NoConvergence("metric square root cross-check failed");
  }

  return {eta, rho};
}

ComplexMatrix hermitian_counterpart(const ChainSpec& spec) {
  check_metric_spec(spec);
  const double x = std::atanh(spec.gamma);
  const ComplexMatrix rho = rotation_operator(spec.n_sites, Complex(0.0, -x));
  const ComplexMatrix rho_inv =
      rotation_operator(spec.n_sites, Complex(0.0, x));
  return rho * build_hamiltonian(spec) * rho_inv;
}

Complex eta_inner_product(const StateVector& u, const StateVector& v,
                          const MetricPair& metric) {
  if (u.size() != metric.eta.rows() || v.size() != metric.eta.cols())
    throw DimensionMismatch("state length must match the metric dimension");
  return (u.adjoint() * metric.eta * v)(0, 0);
}

}  // namespace ptchain
