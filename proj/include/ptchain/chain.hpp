#ifndef PTCHAIN_CHAIN_HPP
#define PTCHAIN_CHAIN_HPP

#include "ptchain/types.hpp"

namespace ptchain {

// N x N single-particle Hamiltonian: couplings (l, l+1) = sqrt(l(N-l))/2 and
// diagonal c*gamma*((N+1)/2 - l) with c = 1 (Real) or c = i (Imaginary).
ComplexMatrix build_hamiltonian(const ChainSpec& spec);

// Parity (site reversal l -> N+1-l), optionally composed with time reversal
// (entrywise complex conjugation).
StateVector pt_apply(const StateVector& state, bool include_time_reversal);

}  // namespace ptchain

#endif
