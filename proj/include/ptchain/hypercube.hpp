#ifndef PTCHAIN_HYPERCUBE_HPP
#define PTCHAIN_HYPERCUBE_HPP

#include <vector>

#include "ptchain/types.hpp"

namespace ptchain {

// One total-spin sector: every copy of spin S carries the same
// (2S+1)-site chain block. Spins are stored doubled (two_s = 2S) so that
// half-integer values stay exact.
struct SpinBlock {
  int two_s = 0;
  int multiplicity = 0;
  ComplexMatrix block;
};

// d-qubit ensemble: 2^d x 2^d matrix sum_k (1/2)[[i gamma, 1], [1, -i gamma]]
// acting on qubit k. At gamma = 0 this is half the adjacency matrix of the
// d-dimensional hypercube.
struct SpinEnsemble {
  int d = 0;
  double gamma = 0.0;
  ComplexMatrix matrix;
  std::vector<SpinBlock> blocks;
};

// One multiplet of the sequentially coupled basis. `history` records the
// doubled total spin after each qubit is attached; `vectors` holds the
// 2^d-dimensional basis columns ordered by descending m_S, so column l-1
// (site l of the chain block) has m_S = S - l + 1.
struct CoupledMultiplet {
  int two_s = 0;
  int copy = 1;
  std::vector<int> history;
  RealMatrix vectors;
};

// Multiplets sorted by descending S; copies of equal S are numbered by
// descending coupling history (larger intermediate spins first).
struct CoupledBasis {
  int d = 0;
  std::vector<CoupledMultiplet> multiplets;
};

struct ProjectedBlock {
  int two_s = 0;
  int copy = 1;
  std::vector<int> history;
  ComplexMatrix block;
};

// 1 <= d <= 12. The block list is obtained by projecting the matrix onto the
// coupled basis, so construction itself verifies the decomposition.
SpinEnsemble build_spin_ensemble(int d, double gamma);

// Clebsch-Gordan chain: attach one qubit at a time (the new qubit is the
// low bit of the basis index), splitting each spin-S multiplet into
// S + 1/2 and S - 1/2 children.
CoupledBasis coupled_basis(int d);

// B = V^T M V per multiplet. Each block must reproduce the (2S+1)-site
// chain at the ensemble's gamma within 1e-10, and M V must stay inside the
// multiplet's span to the same tolerance; violations throw BlockMismatch.
std::vector<ProjectedBlock> project_blocks(const SpinEnsemble& ensemble,
                                           const CoupledBasis& basis);

}  // namespace ptchain

#endif
