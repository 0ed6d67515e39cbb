#ifndef PTCHAIN_LINALG_HPP
#define PTCHAIN_LINALG_HPP

#include <span>
#include <utility>
#include <vector>

#include "ptchain/types.hpp"

namespace ptchain {

struct EigenSystem {
  RealVector eigenvalues;   // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, paired with eigenvalues
};

// Diagonalizes a Hermitian matrix. The Hermiticity precheck is relative to
// max(1, |m|_max) so that honestly rounded large-entry matrices pass.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

// Integrates i dPhi/dt = h Phi with classical fixed-step RK4 up to time t;
// the final step is shortened to land exactly on t.
StateVector rk4_propagate(const ComplexMatrix& h, const StateVector& psi0,
                          double t, double dt);

// One addend of a log-domain sum: value = exp(log_mag) * phase.
struct LogTerm {
  double log_mag = 0.0;
  Complex phase = 1.0;
};

// Sum of exp(log_mag)*phase over terms, evaluated by factoring out the
// maximum log magnitude. Exact for a single term; empty input gives 0.
Complex log_stable_sum(std::span<const LogTerm> terms);

}  // namespace ptchain

#endif
