#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptchain/chain.hpp"
#include "ptchain/linalg.hpp"
#include "ptchain/metric.hpp"
#include "ptchain/precise.hpp"
#include "ptchain/spectral.hpp"

using namespace ptchain;

TEST_CASE("two-site metric at gamma=0.6") {
  const MetricPair metric = metric_operator({2, 0.6, PotentialKind::Imaginary});
  ComplexMatrix want(2, 2);
  want << Complex(1.25, 0.0), Complex(0.0, -0.75), Complex(0.0, 0.75),
      Complex(1.25, 0.0);
  CHECK((metric.eta - want).cwiseAbs().maxCoeff() < tol::small_n);
  const EigenSystem sys = hermitian_eigensystem(metric.eta);
  CHECK(std::abs(sys.eigenvalues(0) - 0.5) < tol::small_n);
  CHECK(std::abs(sys.eigenvalues(1) - 2.0) < tol::small_n);
  CHECK((metric.rho * metric.rho - metric.eta).cwiseAbs().maxCoeff() <
        tol::small_n);
}

TEST_CASE("gamma=0 metric is the identity") {
  const MetricPair metric = metric_operator({4, 0.0, PotentialKind::Imaginary});
  CHECK((metric.eta - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        tol::exact);
  CHECK((metric.rho - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        tol::exact);
}

TEST_CASE("two-site eta eigenvalues are exp(-+atanh gamma)") {
  for (double gamma : {0.1, 0.45, 0.8}) {
    const MetricPair metric =
        metric_operator({2, gamma, PotentialKind::Imaginary});
    const EigenSystem sys = hermitian_eigensystem(metric.eta);
    const double x = std::atanh(gamma);
    CHECK(std::abs(sys.eigenvalues(0) - std::exp(-x)) < tol::small_n);
    CHECK(std::abs(sys.eigenvalues(1) - std::exp(x)) < tol::small_n);
  }
}

TEST_CASE("construction routes agree") {
  for (int n_sites : {2, 6, 12}) {
    for (double gamma : {0.2, 0.5}) {
      const ChainSpec spec{n_sites, gamma, PotentialKind::Imaginary};
      const MetricPair metric = metric_operator(spec);
      const BiorthogonalSystem sys = analytic_eigensystem(spec);
      const ComplexMatrix eta_sum =
          sys.left_vectors * sys.left_vectors.adjoint();
      const double scale =
          std::max(1.0, metric.eta.cwiseAbs().maxCoeff());
      CHECK((eta_sum - metric.eta).cwiseAbs().maxCoeff() <
            tol::small_n * scale);
      CHECK((metric.eta - metric.eta.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("pseudo-hermiticity relation") {
  // Double precision covers the mildly conditioned region; the harsh corner
  // is measured with the extended-precision instrument because the double
  // residual there is dominated by the conditioning of eta itself.
  for (int n_sites : {3, 8, 10}) {
    for (double gamma : {0.2, 0.5}) {
      const ChainSpec spec{n_sites, gamma, PotentialKind::Imaginary};
      const ComplexMatrix h = build_hamiltonian(spec);
      const ComplexMatrix eta = metric_operator(spec).eta;
      const ComplexMatrix lhs = eta * h;
      CHECK((lhs - lhs.adjoint()).cwiseAbs().maxCoeff() <
            tol::small_n * h.cwiseAbs().maxCoeff());
    }
  }
  CHECK(precise::pseudo_hermiticity_defect({30, 0.9, PotentialKind::Imaginary}) <
        tol::small_n);
}

TEST_CASE("hermitian counterpart closed form") {
  const ComplexMatrix h2 = hermitian_counterpart({2, 0.6, PotentialKind::Imaginary});
  ComplexMatrix want2(2, 2);
  want2 << 0.0, 0.4, 0.4, 0.0;
  CHECK((h2 - want2).cwiseAbs().maxCoeff() < tol::small_n);

  const ComplexMatrix h3 = hermitian_counterpart({3, 0.6, PotentialKind::Imaginary});
  const ComplexMatrix bare3 = build_hamiltonian({3, 0.0, PotentialKind::Imaginary});
  CHECK((h3 - 0.8 * bare3).cwiseAbs().maxCoeff() < tol::small_n);

  const ComplexMatrix h0 = hermitian_counterpart({5, 0.0, PotentialKind::Imaginary});
  const ComplexMatrix bare5 = build_hamiltonian({5, 0.0, PotentialKind::Imaginary});
  CHECK((h0 - bare5).cwiseAbs().maxCoeff() < tol::exact);

  CHECK(precise::counterpart_defect({30, 0.9, PotentialKind::Imaginary}) <
        tol::large_n);
}

TEST_CASE("counterpart spectrum is the rescaled ladder") {
  const ChainSpec spec{10, 0.5, PotentialKind::Imaginary};
  const ComplexMatrix h = hermitian_counterpart(spec);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <
        tol::small_n * h.cwiseAbs().maxCoeff());
  const EigenSystem sys = hermitian_eigensystem(0.5 * (h + h.adjoint()).eval());
  const double spacing = std::sqrt(0.75);
  for (int n = 0; n < 10; ++n)
    CHECK(std::abs(sys.eigenvalues(n) - spacing * (n - 4.5)) < tol::small_n);
}

TEST_CASE("eta inner product") {
  SUBCASE("reduces to Dirac at gamma=0") {
    const MetricPair metric =
        metric_operator({3, 0.0, PotentialKind::Imaginary});
    StateVector u(3), v(3);
    u << Complex(0.3, 0.2), Complex(0.0, -1.0), Complex(0.5, 0.0);
    v << Complex(1.0, 0.0), Complex(0.25, 0.25), Complex(0.0, 0.4);
    CHECK(std::abs(eta_inner_product(u, v, metric) - (u.adjoint() * v)(0, 0)) <
          tol::exact);
  }
  SUBCASE("eigenvectors are eta-orthonormal") {
    for (int n_sites : {5, 12, 20}) {
      const ChainSpec spec{n_sites, 0.5, PotentialKind::Imaginary};
      const MetricPair metric = metric_operator(spec);
      const BiorthogonalSystem sys = analytic_eigensystem(spec);
      const double eta_scale = metric.eta.cwiseAbs().maxCoeff();
      for (int m = 0; m < n_sites; m += 3)
        for (int n = 0; n < n_sites; n += 2) {
          const Complex value = eta_inner_product(
              sys.right_vectors.col(m), sys.right_vectors.col(n), metric);
          // u' eta v cancels down from terms of size |eta| |u| |v|; the
          // defect is measured against that headroom.
          const double scale =
              std::max(1.0, eta_scale * sys.right_vectors.col(m).norm() *
                                sys.right_vectors.col(n).norm());
          CHECK(std::abs(value - (m == n ? 1.0 : 0.0)) <
                tol::small_n * scale);
        }
    }
  }
  SUBCASE("constant along an RK4 trajectory") {
    const ChainSpec spec{10, 0.5, PotentialKind::Imaginary};
    const MetricPair metric = metric_operator(spec);
    const ComplexMatrix h = build_hamiltonian(spec);
    StateVector state = StateVector::Zero(10);
    state(0) = 1.0;
    const double two_tau = 2.0 * std::numbers::pi / std::sqrt(0.75);
    const double reference =
        eta_inner_product(state, state, metric).real();
    for (int step = 0; step < 20; ++step) {
      state = rk4_propagate(h, state, two_tau / 20, 1e-3);
      CHECK(std::abs(eta_inner_product(state, state, metric).real() -
                     reference) < tol::large_n);
    }
  }
  SUBCASE("dimension checks") {
    const MetricPair metric =
        metric_operator({3, 0.2, PotentialKind::Imaginary});
    CHECK_THROWS_AS(
        eta_inner_product(StateVector::Ones(2), StateVector::Ones(3), metric),
        DimensionMismatch);
  }
}

TEST_CASE("metric rejects unusable phases") {
  CHECK_THROWS_AS(metric_operator({4, 1.0, PotentialKind::Imaginary}),
                  EPSingular);
  CHECK_THROWS_AS(metric_operator({4, 1.7, PotentialKind::Imaginary}),
                  BrokenPhase);
  CHECK_THROWS_AS(metric_operator({4, 0.5, PotentialKind::Real}), InvalidSpec);
  CHECK_THROWS_AS(hermitian_counterpart({4, 1.0, PotentialKind::Imaginary}),
                  EPSingular);
}
