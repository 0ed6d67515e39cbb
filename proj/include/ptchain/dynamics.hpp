#ifndef PTCHAIN_DYNAMICS_HPP
#define PTCHAIN_DYNAMICS_HPP

#include "ptchain/spectral.hpp"
#include "ptchain/types.hpp"

namespace ptchain {

// Modal coefficients C_n = sum_l psi_n(l) state(l) (bilinear pairing with
// the left eigenvectors; no conjugation).
Eigen::VectorXcd expand_initial(const StateVector& state,
                                const BiorthogonalSystem& system);

// state(t) = sum_n C_n exp(-i eps_n t) psi_n.
StateVector evolve(const StateVector& state, double t,
                   const BiorthogonalSystem& system);

// Revival period tau = pi / level spacing.
double tau_period(const ChainSpec& spec);

// The state concentrated near site l that the chain carries to the mirror
// site: C_m = 2 Re d_{m,l} / sqrt(Omega_l) with
// Omega_l = 2 + 2 sum_m |d_{m,l}|^2. Returned Dirac-normalized.
StateVector transferable_state(int l, const ChainSpec& spec);

struct TransferReport {
  double tau = 0.0;
  double fidelity = 0.0;
  Complex global_phase = 1.0;
};

// Evolves `state` to tau and scores the overlap with the mirror-conjugate
// target; the fidelity is insensitive to the measured global phase.
TransferReport pst_fidelity(const StateVector& state, const ChainSpec& spec);

struct EvolutionTrace {
  RealVector times;
  ComplexMatrix snapshots;  // column i holds the state at times(i)
  RealVector dirac_norms;
  RealVector eta_norms;
};

// Uniform inclusive grid of `samples` points on [0, t_max]. The eta norm
// uses the chain's metric (identity for the real kind and gamma = 0).
EvolutionTrace norm_trace(const StateVector& state, const ChainSpec& spec,
                          double t_max, int samples);

}  // namespace ptchain

#endif
