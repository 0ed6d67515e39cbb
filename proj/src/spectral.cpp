#include "ptchain/spectral.hpp"

#include <cmath>
#include <numbers>

#include "ptchain/chain.hpp"

namespace ptchain {
namespace {

double ln_binomial_d(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double measure_pt_sign(const ComplexMatrix& right) {
  const StateVector psi = right.col(0);
  const StateVector flipped = pt_apply(psi, true);
  Eigen::Index pivot = 0;
  psi.cwiseAbs().maxCoeff(&pivot);
  const Complex ratio = flipped(pivot) / psi(pivot);
  // s_1 is +-1 up to rounding; pt_sign = s_n (-1)^n evaluated at n = 1.
  return ratio.real() >= 0 ? -1.0 : 1.0;
}

}  // namespace

double level_spacing(const ChainSpec& spec) {
  spec.validate();
  if (!spec.imaginary()) return std::sqrt(1.0 + spec.gamma * spec.gamma);
  if (spec.critical())
    throw EPSingular("level spacing vanishes at the exceptional point");
  if (std::abs(spec.gamma) > 1.0)
    throw BrokenPhase("level spacing is imaginary in the broken phase");
  return std::sqrt(1.0 - spec.gamma * spec.gamma);
}

BiorthogonalSystem analytic_eigensystem(const ChainSpec& spec) {
  spec.validate();
  if (spec.imaginary()) {
    if (spec.critical())
      throw EPSingular("eigensystem coalesces at the exceptional point");
    if (std::abs(spec.gamma) > 1.0)
      throw BrokenPhase("analytic eigensystem covers the unbroken phase only");
  }
  const int n_sites = spec.n_sites;
  BiorthogonalSystem sys;
  sys.spec = spec;
  sys.beta = beta_angle(spec.gamma, spec.kind);
  sys.right_vectors =
      rotation_operator(n_sites, sys.beta.beta).transpose().eval();
  sys.left_vectors = sys.right_vectors.conjugate();
  const double spacing = level_spacing(spec);
  sys.eigenvalues.resize(n_sites);
  for (int n = 1; n <= n_sites; ++n)
    sys.eigenvalues(n - 1) = spacing * ((n_sites + 1) / 2.0 - n);
  sys.pt_sign = spec.imaginary() ? measure_pt_sign(sys.right_vectors) : 0.0;
  return sys;
}

ComplexMatrix dressed_eigenfunctions(const ChainSpec& spec) {
  const BiorthogonalSystem sys = analytic_eigensystem(spec);
  const int n_sites = spec.n_sites;
  const Complex half = 0.5 * sys.beta.beta;
  const Complex log_base =
      0.5 * std::numbers::ln2 + std::log(std::cos(half));
  ComplexMatrix dressed(n_sites, n_sites);
  for (int n = 1; n <= n_sites; ++n) {
    const Complex log_g = static_cast<double>(1 - n_sites) * log_base -
                          0.5 * ln_binomial_d(n_sites - 1, n - 1);
    dressed.col(n - 1) = std::exp(log_g) * sys.right_vectors.col(n - 1);
  }
  return dressed;
}

StateVector coalescent_state(int n_sites, int sign) {
  if (n_sites < 1) throw InvalidSpec("need at least one site");
  if (n_sites > 4096) throw TooLarge("dense representation limited to 4096 sites");
  if (sign != 1 && sign != -1) throw InvalidSpec("sign must be +1 or -1");
  static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  StateVector phi(n_sites);
  for (int l = 1; l <= n_sites; ++l) {
    const double mag = std::exp(0.5 * ln_binomial_d(n_sites - 1, l - 1) +
                                0.5 * (1 - n_sites) * std::numbers::ln2);
    Complex phase = i_pow[(n_sites - l) % 4];
    if (sign < 0) phase = std::conj(phase);
    phi(l - 1) = mag * phase;
  }
  return phi;
}

PhaseReport classify_phase(const ChainSpec& spec) {
  spec.validate();
  if (!spec.imaginary())
    throw InvalidSpec("phase classification applies to the imaginary kind");
  const int n_sites = spec.n_sites;
  PhaseReport report;
  report.eigenvalues.resize(n_sites);
  const double gamma = spec.gamma;
  if (spec.critical()) {
    report.phase = Phase::Critical;
    report.degree = 0.0;
    report.eigenvalues.setZero();
    report.note = "exceptional point: all eigenvalues coalesce at zero";
    return report;
  }
  if (std::abs(gamma) < 1.0) {
    report.phase = Phase::Unbroken;
    report.degree = 0.0;
    const double spacing = std::sqrt(1.0 - gamma * gamma);
    for (int n = 1; n <= n_sites; ++n)
      report.eigenvalues(n - 1) = spacing * ((n_sites + 1) / 2.0 - n);
    report.note = "entire spectrum real";
    return report;
  }
  report.phase = Phase::Broken;
  const double rate = std::sqrt(gamma * gamma - 1.0);
  int complex_count = 0;
  for (int n = 1; n <= n_sites; ++n) {
    const double m = (n_sites + 1) / 2.0 - n;
    report.eigenvalues(n - 1) = Complex(0.0, rate * m);
    if (m != 0.0) ++complex_count;
  }
  report.degree = static_cast<double>(complex_count) / n_sites;
  report.note = n_sites % 2 == 1
                    ? "conjugate pairs plus one persistent real zero mode"
                    : "spectrum splits into conjugate imaginary pairs";
  return report;
}

}  // namespace ptchain
