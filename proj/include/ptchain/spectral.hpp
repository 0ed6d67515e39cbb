#ifndef PTCHAIN_SPECTRAL_HPP
#define PTCHAIN_SPECTRAL_HPP

#include <string>

#include "ptchain/angular.hpp"
#include "ptchain/types.hpp"

namespace ptchain {

// Closed-form eigensystem of the chain. Column n-1 of right_vectors is
// psi_n(l) = d_{n,l}(beta); the left eigenvectors are the entrywise
// conjugates, and the pair is biorthogonal: sum_l psi_n(l) psi_m(l) =
// delta_{n,m}. pt_sign is the measured n-independent sign sigma in
// PT psi_n = sigma (-1)^n psi_n (imaginary kind; 0.0 otherwise).
struct BiorthogonalSystem {
  ChainSpec spec;
  MixingAngle beta;
  Eigen::VectorXcd eigenvalues;
  ComplexMatrix right_vectors;
  ComplexMatrix left_vectors;
  double pt_sign = 0.0;
};

// Equally spaced ladder eps_n = s ((N+1)/2 - n) with s = sqrt(1 - gamma^2)
// for the imaginary kind and s = sqrt(1 + gamma^2) for the real kind.
// Requires the unbroken phase; throws EPSingular at |gamma| = 1 and
// BrokenPhase beyond it.
BiorthogonalSystem analytic_eigensystem(const ChainSpec& spec);

double level_spacing(const ChainSpec& spec);

// Column n-1 holds psi~_n = g_n psi_n with
// g_n = (sqrt(2) cos(beta/2))^{1-N} / sqrt(C(N-1, n-1)), the normalization
// that keeps every eigenfunction finite through the exceptional point.
ComplexMatrix dressed_eigenfunctions(const ChainSpec& spec);

// phi_pm(l) = (sqrt(2))^{1-N} sqrt(C(N-1, l-1)) (pm i)^{N-l}: the common
// profile all dressed eigenfunctions collapse onto as gamma -> pm 1. For
// N >= 2 it is self-orthogonal under the bilinear pairing, sum_l phi(l)^2 = 0.
StateVector coalescent_state(int n_sites, int sign);

enum class Phase { Unbroken, Critical, Broken };

struct PhaseReport {
  Phase phase = Phase::Unbroken;
  double degree = 0.0;  // fraction of eigenvalues off the real axis
  Eigen::VectorXcd eigenvalues;
  std::string note;
};

// Imaginary kind only: continues the spectrum across the exceptional point,
// eps_n = i sqrt(gamma^2 - 1) ((N+1)/2 - n) in the broken phase. The critical
// report uses degree 0 by convention (the collapsed spectrum is real).
PhaseReport classify_phase(const ChainSpec& spec);

}  // namespace ptchain

#endif
