#include "ptchain/hypercube.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/SparseCore>

#include "ptchain/chain.hpp"

namespace ptchain {
namespace {

void check_dimension(int d) {
  if (d < 1) throw InvalidSpec("need at least one qubit");
  if (d > 12) throw TooLarge("spin ensembles are limited to 12 qubits");
}

int column_of(int two_s, int two_m) { return (two_s - two_m) / 2; }

// Attach one qubit to a spin-(two_s/2) multiplet. Condon-Shortley phases:
// the up child mixes with positive coefficients, the down child carries the
// minus sign on the spin-up component.
CoupledMultiplet couple_up(const CoupledMultiplet& parent) {
  const int two_s = parent.two_s;
  const Eigen::Index dim = parent.vectors.rows();
  CoupledMultiplet child;
  child.two_s = two_s + 1;
  child.history = parent.history;
  child.history.push_back(child.two_s);
  child.vectors = RealMatrix::Zero(2 * dim, two_s + 2);
  for (int two_m = child.two_s; two_m >= -child.two_s; two_m -= 2) {
    const double cup =
        std::sqrt((two_s + two_m + 1) / (2.0 * (two_s + 1)));
    const double cdn =
        std::sqrt((two_s - two_m + 1) / (2.0 * (two_s + 1)));
    auto target = child.vectors.col(column_of(child.two_s, two_m));
    if (two_m - 1 >= -two_s && two_m - 1 <= two_s)
      for (Eigen::Index r = 0; r < dim; ++r)
        target(2 * r) += cup * parent.vectors(r, column_of(two_s, two_m - 1));
    if (two_m + 1 >= -two_s && two_m + 1 <= two_s)
      for (Eigen::Index r = 0; r < dim; ++r)
        target(2 * r + 1) +=
            cdn * parent.vectors(r, column_of(two_s, two_m + 1));
  }
  return child;
}

CoupledMultiplet couple_down(const CoupledMultiplet& parent) {
  const int two_s = parent.two_s;
  const Eigen::Index dim = parent.vectors.rows();
  CoupledMultiplet child;
  child.two_s = two_s - 1;
  child.history = parent.history;
  child.history.push_back(child.two_s);
  child.vectors = RealMatrix::Zero(2 * dim, two_s);
  for (int two_m = child.two_s; two_m >= -child.two_s; two_m -= 2) {
    const double cup =
        -std::sqrt((two_s - two_m + 1) / (2.0 * (two_s + 1)));
    const double cdn =
        std::sqrt((two_s + two_m + 1) / (2.0 * (two_s + 1)));
    auto target = child.vectors.col(column_of(child.two_s, two_m));
    for (Eigen::Index r = 0; r < dim; ++r) {
      target(2 * r) += cup * parent.vectors(r, column_of(two_s, two_m - 1));
      target(2 * r + 1) += cdn * parent.vectors(r, column_of(two_s, two_m + 1));
    }
  }
  return child;
}

Eigen::SparseMatrix<Complex> sparsify(const ComplexMatrix& m) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex(0.0, 0.0)) triplets.emplace_back(i, j, m(i, j));
  Eigen::SparseMatrix<Complex> s(m.rows(), m.cols());
  s.setFromTriplets(triplets.begin(), triplets.end());
  return s;
}

}  // namespace

CoupledBasis coupled_basis(int d) {
  check_dimension(d);
  CoupledBasis basis;
  basis.d = d;
  CoupledMultiplet seed;
  seed.two_s = 1;
  seed.history = {1};
  seed.vectors = RealMatrix::Identity(2, 2);
  basis.multiplets = {seed};
  for (int k = 2; k <= d; ++k) {
    std::vector<CoupledMultiplet> next;
    next.reserve(2 * basis.multiplets.size());
    for (const auto& parent : basis.multiplets) {
      next.push_back(couple_up(parent));
      if (parent.two_s > 0) next.push_back(couple_down(parent));
    }
    basis.multiplets = std::move(next);
  }
  std::sort(basis.multiplets.begin(), basis.multiplets.end(),
            [](const CoupledMultiplet& a, const CoupledMultiplet& b) {
              if (a.two_s != b.two_s) return a.two_s > b.two_s;
              return a.history > b.history;
            });
  int copy = 0;
  int last_two_s = -1;
  for (auto& m : basis.multiplets) {
    copy = m.two_s == last_two_s ? copy + 1 : 1;
    last_two_s = m.two_s;
    m.copy = copy;
  }
  return basis;
}

std::vector<ProjectedBlock> project_blocks(const SpinEnsemble& ensemble,
                                           const CoupledBasis& basis) {
  if (ensemble.d != basis.d)
    throw DimensionMismatch("ensemble and basis qubit counts differ");
  const Eigen::Index dim = Eigen::Index(1) << ensemble.d;
  if (ensemble.matrix.rows() != dim || ensemble.matrix.cols() != dim)
    throw DimensionMismatch("ensemble matrix has the wrong dimension");
  const Eigen::SparseMatrix<Complex> sparse = sparsify(ensemble.matrix);
  std::vector<ProjectedBlock> out;
  out.reserve(basis.multiplets.size());
  for (const auto& m : basis.multiplets) {
    const ComplexMatrix v = m.vectors.cast<Complex>();
    const ComplexMatrix image = sparse * v;
    ComplexMatrix block = v.transpose() * image;
    const ChainSpec chain{m.two_s + 1, ensemble.gamma,
                          PotentialKind::Imaginary};
    const ComplexMatrix expected = build_hamiltonian(chain);
    if ((block - expected).cwiseAbs().maxCoeff() > tol::small_n)
      throw BlockMismatch("projected block deviates from the chain");
    if ((image - v * block).cwiseAbs().maxCoeff() > tol::small_n)
      throw BlockMismatch("matrix couples distinct multiplets");
    out.push_back({m.two_s, m.copy, m.history, std::move(block)});
  }
  return out;
}

SpinEnsemble build_spin_ensemble(int d, double gamma) {
  check_dimension(d);
  if (!std::isfinite(gamma)) throw InvalidSpec("gamma must be finite");
  const ComplexMatrix single =
      build_hamiltonian({2, gamma, PotentialKind::Imaginary});
  const Eigen::Index dim = Eigen::Index(1) << d;
  SpinEnsemble ensemble;
  ensemble.d = d;
  ensemble.gamma = gamma;
  ensemble.matrix = ComplexMatrix::Zero(dim, dim);
  for (int k = 1; k <= d; ++k) {
    const Eigen::Index left = Eigen::Index(1) << (k - 1);
    const Eigen::Index right = Eigen::Index(1) << (d - k);
    for (Eigen::Index lo = 0; lo < left; ++lo)
      for (Eigen::Index hi = 0; hi < right; ++hi)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            ensemble.matrix((lo * 2 + a) * right + hi,
                            (lo * 2 + b) * right + hi) += single(a, b);
  }
  const CoupledBasis basis = coupled_basis(d);
  for (const auto& projected : project_blocks(ensemble, basis)) {
    if (!ensemble.blocks.empty() &&
        ensemble.blocks.back().two_s == projected.two_s)
      ++ensemble.blocks.back().multiplicity;
    else
      ensemble.blocks.push_back({projected.two_s, 1, projected.block});
  }
  return ensemble;
}

}  // namespace ptchain
