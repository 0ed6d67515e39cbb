#ifndef PTCHAIN_TYPES_HPP
#define PTCHAIN_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ptchain {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

namespace tol {
// Centralized tolerance tiers: exact identities, small systems (N <= 30),
// and large systems (N = 100).
inline constexpr double exact = 1e-12;
inline constexpr double small_n = 1e-10;
inline constexpr double large_n = 1e-8;
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSpec : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct EPSingular : Error {
  using Error::Error;
};
struct BrokenPhase : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct BlockMismatch : Error {
  using Error::Error;
};

enum class PotentialKind { Real, Imaginary };

// Model parameters of the engineered chain: site count N, potential strength
// gamma, and whether the linear potential enters with a real or imaginary
// coefficient. Sites are indexed 1..N in every public interface.
struct ChainSpec {
  int n_sites = 1;
  double gamma = 0.0;
  PotentialKind kind = PotentialKind::Imaginary;

  void validate() const {
    if (n_sites < 1) throw InvalidSpec("n_sites must be >= 1");
    if (!std::isfinite(gamma)) throw InvalidSpec("gamma must be finite");
  }
  bool imaginary() const { return kind == PotentialKind::Imaginary; }
  bool critical() const { return imaginary() && std::abs(std::abs(gamma) - 1.0) == 0.0; }
};

}  // namespace ptchain

#endif
