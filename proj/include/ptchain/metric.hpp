#ifndef PTCHAIN_METRIC_HPP
#define PTCHAIN_METRIC_HPP

#include "ptchain/types.hpp"

namespace ptchain {

// eta = exp(2 atanh(gamma) J_y) intertwines the chain with its adjoint,
// eta H = H^dagger eta; rho is its positive square root exp(atanh(gamma) J_y).
struct MetricPair {
  ComplexMatrix eta;
  ComplexMatrix rho;
};

// Imaginary kind, |gamma| < 1. The metric is built along two independent
// routes: (a) the left-eigenvector completeness sum, (b) the rotation
// operator at theta = beta - beta* = -2i atanh(gamma). The routes must agree
// to 1e-10 relative to the largest metric entry, and when the spectrum of
// eta is resolvable in double precision the eigendecomposition square root
// of route (a) must reproduce rho.
MetricPair metric_operator(const ChainSpec& spec);

// rho H rho^{-1} with rho^{-1} = rotation_operator(+i atanh(gamma)): equals
// sqrt(1 - gamma^2) H(gamma = 0).
ComplexMatrix hermitian_counterpart(const ChainSpec& spec);

// <u, v>_eta = u^dagger eta v; conserved under the non-unitary evolution.
Complex eta_inner_product(const StateVector& u, const StateVector& v,
                          const MetricPair& metric);

}  // namespace ptchain

#endif
