#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ptchain/linalg.hpp"
#include "ptchain/precise.hpp"

using namespace ptchain;

namespace {

ComplexMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(gen), dist(gen));
  return 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

TEST_CASE("identity eigensystem") {
  const EigenSystem sys = hermitian_eigensystem(ComplexMatrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(sys.eigenvalues(i) == doctest::Approx(1.0));
}

TEST_CASE("two-level eigenvalues e^{-+ln2}") {
  ComplexMatrix m(2, 2);
  m << Complex(1.25, 0), Complex(0, -0.75), Complex(0, 0.75), Complex(1.25, 0);
  const EigenSystem sys = hermitian_eigensystem(m);
  CHECK(std::abs(sys.eigenvalues(0) - 0.5) < tol::exact);
  CHECK(std::abs(sys.eigenvalues(1) - 2.0) < tol::exact);
  const ComplexMatrix recon = sys.eigenvectors *
                              sys.eigenvalues.cast<Complex>().asDiagonal() *
                              sys.eigenvectors.adjoint();
  CHECK((recon - m).cwiseAbs().maxCoeff() < 1e-9 * m.cwiseAbs().maxCoeff());
}

TEST_CASE("standard two-level matrix") {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  const EigenSystem sys = hermitian_eigensystem(m);
  CHECK(std::abs(sys.eigenvalues(0) + 1.0) < tol::exact);
  CHECK(std::abs(sys.eigenvalues(1) - 1.0) < tol::exact);
}

TEST_CASE("eigensystem reconstruction property") {
  for (int n : {3, 17, 40}) {
    const ComplexMatrix m = random_hermitian(n, 1234u + n);
    const EigenSystem sys = hermitian_eigensystem(m);
    const ComplexMatrix recon = sys.eigenvectors *
                                sys.eigenvalues.cast<Complex>().asDiagonal() *
                                sys.eigenvectors.adjoint();
    CHECK((recon - m).cwiseAbs().maxCoeff() < 1e-9 * m.cwiseAbs().maxCoeff());
    CHECK((sys.eigenvectors.adjoint() * sys.eigenvectors -
           ComplexMatrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int i = 1; i < n; ++i)
      CHECK(sys.eigenvalues(i) >= sys.eigenvalues(i - 1));
  }
}

TEST_CASE("eigensystem rejects bad input") {
  ComplexMatrix skew(2, 2);
  skew << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(hermitian_eigensystem(skew), NotHermitian);
  CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix::Zero(2, 3)),
                  NotHermitian);
}

TEST_CASE("rk4 null generator") {
  StateVector psi0(3);
  psi0 << Complex(0.2, 0.1), Complex(-0.5, 0.0), Complex(0.0, 0.7);
  const StateVector out =
      rk4_propagate(ComplexMatrix::Zero(3, 3), psi0, 5.0, 1e-2);
  CHECK((out - psi0).cwiseAbs().maxCoeff() < tol::exact);
}

TEST_CASE("rk4 closed-form two-level rotation") {
  ComplexMatrix h(2, 2);
  h << 0.0, 0.5, 0.5, 0.0;
  StateVector psi0(2);
  psi0 << 1.0, 0.0;
  const StateVector out = rk4_propagate(h, psi0, std::numbers::pi, 1e-4);
  CHECK(std::abs(out(0) - Complex(0.0, 0.0)) < 1e-8);
  CHECK(std::abs(out(1) - Complex(0.0, -1.0)) < 1e-8);
}

TEST_CASE("rk4 fourth-order convergence") {
  ComplexMatrix h(2, 2);
  h << 0.0, 0.5, 0.5, 0.0;
  StateVector psi0(2);
  psi0 << 1.0, 0.0;
  const double t = 1.0;
  const StateVector exact =
      (StateVector(2) << std::cos(t / 2), Complex(0.0, -std::sin(t / 2)))
          .finished();
  const auto err = [&](double dt) {
    return (rk4_propagate(h, psi0, t, dt) - exact).cwiseAbs().maxCoeff();
  };
  const double ratio1 = err(0.02) / err(0.01);
  const double ratio2 = err(0.01) / err(0.005);
  CHECK(ratio1 > 10.0);
  CHECK(ratio1 < 25.0);
  CHECK(ratio2 > 10.0);
  CHECK(ratio2 < 25.0);
}

TEST_CASE("rk4 argument validation") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  StateVector psi0 = StateVector::Ones(2);
  CHECK_THROWS_AS(rk4_propagate(h, psi0, 1.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(rk4_propagate(h, psi0, -1.0, 0.1), InvalidSpec);
  CHECK_THROWS_AS(rk4_propagate(h, StateVector::Ones(3), 1.0, 0.1),
                  DimensionMismatch);
}

TEST_CASE("log_stable_sum base cases") {
  CHECK(log_stable_sum({}) == Complex(0.0, 0.0));
  const std::vector<LogTerm> single = {{std::log(2.0), Complex(1.0, 0.0)}};
  CHECK(std::abs(log_stable_sum(single) - 2.0) < tol::exact);
  const std::vector<LogTerm> cancel = {{std::log(5.0), Complex(1.0, 0.0)},
                                       {std::log(5.0), Complex(-1.0, 0.0)}};
  CHECK(std::abs(log_stable_sum(cancel)) < tol::exact * 5.0);
}

TEST_CASE("log_stable_sum binomial magnitude") {
  const double log_c =
      std::lgamma(100.0) - std::lgamma(50.0) - std::lgamma(51.0);
  const std::vector<LogTerm> term = {{log_c, Complex(1.0, 0.0)}};
  const double assembled = std::log(std::abs(log_stable_sum(term)));
  const double oracle = precise::ln_binomial(99, 49);
  CHECK(std::abs(assembled - oracle) < 1e-10 * std::abs(oracle));
  CHECK(assembled == doctest::Approx(66.09069447145745).epsilon(1e-12));
}

TEST_CASE("log_stable_sum agrees with naive summation") {
  std::mt19937 gen(99u);
  std::uniform_real_distribution<double> mag(-3.0, 3.0);
  std::uniform_real_distribution<double> ang(0.0, 6.28);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<LogTerm> terms;
    Complex naive(0.0, 0.0);
    for (int k = 0; k < 12; ++k) {
      const double lm = mag(gen);
      const Complex phase = std::polar(1.0, ang(gen));
      terms.push_back({lm, phase});
      naive += std::exp(lm) * phase;
    }
    CHECK(std::abs(log_stable_sum(terms) - naive) <=
          1e-12 * std::max(1.0, std::abs(naive)));
  }
}

TEST_CASE("log_stable_sum survives huge magnitudes") {
  const std::vector<LogTerm> big = {{700.0, Complex(1.0, 0.0)},
                                    {700.0, Complex(-0.5, 0.0)}};
  const Complex value = log_stable_sum(big);
  CHECK(std::isfinite(value.real()));
  CHECK(std::abs(std::log(std::abs(value)) - (700.0 + std::log(0.5))) < 1e-10);
}
