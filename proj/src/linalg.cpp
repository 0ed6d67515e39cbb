#include "ptchain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptchain {

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw NotHermitian("matrix is not square");
  if (m.rows() > 4096) throw TooLarge("dimension exceeds 4096");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::exact * scale) throw NotHermitian("matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw NoConvergence("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector rk4_propagate(const ComplexMatrix& h, const StateVector& psi0,
                          double t, double dt) {
  if (h.rows() != h.cols() || h.cols() != psi0.size())
    throw DimensionMismatch("generator and state dimensions differ");
  if (!(dt > 0.0)) throw InvalidSpec("dt must be positive");
  if (t < 0.0) throw InvalidSpec("t must be non-negative");

  const Complex minus_i(0.0, -1.0);
  StateVector psi = psi0;
  double remaining = t;
  while (remaining > 0.0) {
    const double step = std::min(dt, remaining);
    const StateVector k1 = minus_i * (h * psi);
    const StateVector k2 = minus_i * (h * (psi + 0.5 * step * k1));
    const StateVector k3 = minus_i * (h * (psi + 0.5 * step * k2));
    const StateVector k4 = minus_i * (h * (psi + step * k3));
    psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    remaining -= step;
  }
  return psi;
}

Complex log_stable_sum(std::span<const LogTerm> terms) {
  if (terms.empty()) return 0.0;
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& term : terms) m = std::max(m, term.log_mag);
  if (m == -std::numeric_limits<double>::infinity()) return 0.0;

  Complex acc = 0.0;
  for (const auto& term : terms) acc += std::exp(term.log_mag - m) * term.phase;

  // Recompose exp(m)*acc in pieces so that intermediate magnitudes above the
  // double exponent range still cancel against a small acc.
  constexpr double chunk = 600.0;
  double rest = m;
  while (rest > chunk) {
    acc *= std::exp(chunk);
    rest -= chunk;
  }
  while (rest < -chunk) {
    acc *= std::exp(-chunk);
    rest += chunk;
  }
  return acc * std::exp(rest);
}

}  // namespace ptchain
