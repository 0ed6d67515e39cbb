#include "ptchain/chain.hpp"

#include <cmath>

namespace ptchain {

ComplexMatrix build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int l = 1; l < n; ++l) {
    const double coupling = std::sqrt(static_cast<double>(l) * (n - l)) / 2.0;
    h(l - 1, l) = coupling;
    h(l, l - 1) = coupling;
  }
  const Complex c = spec.imaginary() ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  for (int l = 1; l <= n; ++l)
    h(l - 1, l - 1) = c * spec.gamma * ((n + 1) / 2.0 - l);
  return h;
}

StateVector pt_apply(const StateVector& state, bool include_time_reversal) {
  StateVector out = state.reverse();
  if (include_time_reversal) out = out.conjugate();
  return out;
}

}  // namespace ptchain
