#ifndef PTCHAIN_ANGULAR_HPP
#define PTCHAIN_ANGULAR_HPP

#include "ptchain/types.hpp"

namespace ptchain {

// Single-particle spin-j representation on N = 2j+1 sites. Site l carries
// m = (N+1)/2 - l, so site 1 has the highest weight.
struct AngularOps {
  int n_sites = 0;
  ComplexMatrix j_plus, j_minus, j_x, j_y, j_z;
};

AngularOps angular_ops(int n_sites);

struct MixingAngle {
  Complex beta;
};

// Real kind: beta = arctan(1/gamma) on the (0, pi) branch. Imaginary kind:
// principal-branch continuation, pi/2 - i*atanh(gamma) for |gamma| < 1 and
// -i*atanh(1/gamma) for |gamma| > 1.
MixingAngle beta_angle(double gamma, PotentialKind kind);

// d_{n,l}(beta): finite nu-sum with prefactor
// [(N-n)!(n-1)!(N-l)!(l-1)!]^{1/2}, nu running over the range where all four
// factorial arguments stay non-negative. Terms are assembled in log domain;
// entries whose cancellation exceeds the double-precision budget are
// re-evaluated in extended precision.
Complex wigner_d(int n_sites, int n, int l, Complex beta);

// N x N matrix with entries d_{n,l}(theta); equals exp(+i*theta*J_y) in this
// representation, and the group inverse is the matrix at -theta.
ComplexMatrix rotation_operator(int n_sites, Complex theta);

namespace detail {
// Naive direct evaluation of the nu-sum in double precision; cross-check
// path for N <= 30 where no log-domain assembly is needed.
Complex wigner_d_direct(int n_sites, int n, int l, Complex beta);
}  // namespace detail

}  // namespace ptchain

#endif
