#include "ptchain/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "ptchain/chain.hpp"
#include "ptchain/metric.hpp"

namespace ptchain {
namespace {

void check_time(double t) {
  if (!std::isfinite(t)) throw InvalidSpec("time must be finite");
}

Eigen::VectorXcd modal_phases(const BiorthogonalSystem& system, double t) {
  return (Complex(0.0, -t) * system.eigenvalues.array()).exp().matrix();
}

}  // namespace

Eigen::VectorXcd expand_initial(const StateVector& state,
                                const BiorthogonalSystem& system) {
  if (state.size() != system.right_vectors.rows())
    throw DimensionMismatch("state length must match the chain size");
  return system.right_vectors.transpose() * state;
}

StateVector evolve(const StateVector& state, double t,
                   const BiorthogonalSystem& system) {
  check_time(t);
  const Eigen::VectorXcd coeffs = expand_initial(state, system);
  return system.right_vectors *
         coeffs.cwiseProduct(modal_phases(system, t));
}

double tau_period(const ChainSpec& spec) {
  return std::numbers::pi / level_spacing(spec);
}

StateVector transferable_state(int l, const ChainSpec& spec) {
  const BiorthogonalSystem system = analytic_eigensystem(spec);
  if (l < 1 || l > spec.n_sites)
    throw IndexOutOfRange("site index must lie in 1..N");
  const Eigen::VectorXcd d_col = system.right_vectors.row(l - 1).transpose();
  const double omega = 2.0 + 2.0 * d_col.squaredNorm();
  const Eigen::VectorXcd coeffs =
      (2.0 / std::sqrt(omega)) * d_col.real().cast<Complex>();
  StateVector state = system.right_vectors * coeffs;
  return state / state.norm();
}

TransferReport pst_fidelity(const StateVector& state, const ChainSpec& spec) {
  const BiorthogonalSystem system = analytic_eigensystem(spec);
  if (state.size() != spec.n_sites)
    throw DimensionMismatch("state length must match the chain size");
  TransferReport report;
  report.tau = tau_period(spec);
  const StateVector final_state = evolve(state, report.tau, system);
  const StateVector target = pt_apply(state, true);
  const Complex overlap = (target.adjoint() * final_state)(0, 0);
  report.fidelity = std::norm(overlap) /
                    (target.squaredNorm() * final_state.squaredNorm());
  report.global_phase =
      std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return report;
}

EvolutionTrace norm_trace(const StateVector& state, const ChainSpec& spec,
                          double t_max, int samples) {
  check_time(t_max);
  if (t_max < 0) throw InvalidSpec("t_max must be non-negative");
  if (samples < 2) throw InvalidSpec("need at least two samples");
  const BiorthogonalSystem system = analytic_eigensystem(spec);
  if (state.size() != spec.n_sites)
    throw DimensionMismatch("state length must match the chain size");

  const bool trivial_metric = !spec.imaginary() || spec.gamma == 0.0;
  ComplexMatrix eta;
  if (!trivial_metric) eta = metric_operator(spec).eta;

  const Eigen::VectorXcd coeffs = expand_initial(state, system);
  EvolutionTrace trace;
  trace.times.resize(samples);
  trace.snapshots.resize(spec.n_sites, samples);
  trace.dirac_norms.resize(samples);
  trace.eta_norms.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = t_max * i / (samples - 1);
    trace.times(i) = t;
    const StateVector snapshot =
        system.right_vectors * coeffs.cwiseProduct(modal_phases(system, t));
    trace.snapshots.col(i) = snapshot;
    trace.dirac_norms(i) = snapshot.norm();
    trace.eta_norms(i) =
        trivial_metric
            ? trace.dirac_norms(i)
            : std::sqrt(std::abs((snapshot.adjoint() * eta * snapshot)(0, 0)));
  }
  return trace;
}

}  // namespace ptchain
