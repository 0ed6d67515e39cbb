#include "ptchain/precise.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <cstddef>

#include "ptchain/detail/wigner_kernel.hpp"

namespace ptchain::precise {
namespace {

using mpc = boost::multiprecision::cpp_complex_50;
using mpr = mpc::value_type;

std::vector<mpr> factorial_table(int n_max) {
  std::vector<mpr> fact(static_cast<std::size_t>(n_max) + 1);
  fact[0] = 1;
  for (int k = 1; k <= n_max; ++k) fact[k] = fact[k - 1] * k;
  return fact;
}

mpc to_mpc(Complex z) { return {mpr(z.real()), mpr(z.imag())}; }

Complex to_double(const mpc& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Row-major N x N rotation matrix with entries d_{n,l}(beta).
std::vector<mpc> rotation_matrix(int n_sites, const mpc& beta) {
  const auto fact = factorial_table(n_sites);
  const mpc half = beta / 2;
  const mpc c = cos(half);
  const mpc s = -sin(half);
  std::vector<mpc> d(static_cast<std::size_t>(n_sites) * n_sites);
  for (int n = 1; n <= n_sites; ++n)
    for (int l = 1; l <= n_sites; ++l)
      d[static_cast<std::size_t>(n - 1) * n_sites + (l - 1)] =
          detail::wigner_nu_sum(n_sites, n, l, c, s, fact);
  return d;
}

mpc beta_from_spec(const ChainSpec& spec) {
  const mpr gamma(spec.gamma);
  if (spec.kind == PotentialKind::Real)
    return mpc(atan2(mpr(1), gamma), mpr(0));
  if (abs(gamma) == 1) throw EPSingular("chain is at the exceptional point");
  if (abs(gamma) < 1) {
    const mpr half_pi = boost::math::constants::half_pi<mpr>();
    return {half_pi, -atanh(gamma)};
  }
  return {mpr(0), -atanh(1 / gamma)};
}

std::vector<mpc> hamiltonian(const ChainSpec& spec) {
  const int n = spec.n_sites;
  const mpr gamma(spec.gamma);
  const mpc unit = spec.imaginary() ? mpc(mpr(0), mpr(1)) : mpc(mpr(1), mpr(0));
  std::vector<mpc> h(static_cast<std::size_t>(n) * n);
  for (int l = 1; l < n; ++l) {
    const mpr coupling = sqrt(mpr(l) * (n - l)) / 2;
    h[static_cast<std::size_t>(l - 1) * n + l] = coupling;
    h[static_cast<std::size_t>(l) * n + (l - 1)] = coupling;
  }
  for (int l = 1; l <= n; ++l)
    h[static_cast<std::size_t>(l - 1) * n + (l - 1)] =
        unit * (gamma * (mpr(n + 1) / 2 - l));
  return h;
}

std::vector<mpc> multiply(const std::vector<mpc>& a, const std::vector<mpc>& b,
                          int n) {
  std::vector<mpc> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const mpc aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == mpc(0)) continue;
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(i) * n + j] +=
            aik * b[static_cast<std::size_t>(k) * n + j];
    }
  return out;
}

double max_abs(const std::vector<mpc>& m) {
  mpr best(0);
  for (const auto& z : m) best = (std::max)(best, abs(z));
  return static_cast<double>(best);
}

void check_spec(const ChainSpec& spec) { spec.validate(); }

}  // namespace

Complex wigner_entry(int n_sites, int n, int l, Complex beta) {
  const auto fact = factorial_table(n_sites);
  const mpc half = to_mpc(beta) / 2;
  return to_double(
      detail::wigner_nu_sum(n_sites, n, l, cos(half), -sin(half), fact));
}

std::vector<Complex> wigner_fill(int n_sites, Complex beta,
                                 std::span<const std::pair<int, int>> indices) {
  const auto fact = factorial_table(n_sites);
  const mpc half = to_mpc(beta) / 2;
  const mpc c = cos(half);
  const mpc s = -sin(half);
  std::vector<Complex> out;
  out.reserve(indices.size());
  for (const auto& [n, l] : indices)
    out.push_back(to_double(detail::wigner_nu_sum(n_sites, n, l, c, s, fact)));
  return out;
}

double orthonormality_defect(int n_sites, Complex beta) {
  const auto d = rotation_matrix(n_sites, to_mpc(beta));
  mpr best(0);
  for (int i = 0; i < n_sites; ++i)
    for (int j = 0; j < n_sites; ++j) {
      mpc acc = i == j ? mpc(-1) : mpc(0);
      for (int k = 0; k < n_sites; ++k)
        acc += d[static_cast<std::size_t>(i) * n_sites + k] *
               d[static_cast<std::size_t>(j) * n_sites + k];
      best = (std::max)(best, abs(acc));
    }
  return static_cast<double>(best);
}

double gram_defect(const ChainSpec& spec) {
  check_spec(spec);
  const auto d = rotation_matrix(spec.n_sites, beta_from_spec(spec));
  const int n = spec.n_sites;
  mpr best(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mpc acc = i == j ? mpc(-1) : mpc(0);
      for (int k = 0; k < n; ++k)
        acc += d[static_cast<std::size_t>(k) * n + i] *
               d[static_cast<std::size_t>(k) * n + j];
      best = (std::max)(best, abs(acc));
    }
  return static_cast<double>(best);
}

double pseudo_hermiticity_defect(const ChainSpec& spec) {
  check_spec(spec);
  if (!spec.imaginary() || std::abs(spec.gamma) >= 1)
    throw InvalidSpec("metric instruments need the unbroken imaginary kind");
  const int n = spec.n_sites;
  const mpr x = atanh(mpr(spec.gamma));
  const auto eta = rotation_matrix(n, mpc(mpr(0), -2 * x));
  const auto prod = multiply(eta, hamiltonian(spec), n);
  mpr best(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const mpc a = prod[static_cast<std::size_t>(i) * n + j];
      const mpc b = prod[static_cast<std::size_t>(j) * n + i];
      best = (std::max)(best, abs(a - conj(b)));
    }
  return static_cast<double>(best);
}

double counterpart_defect(const ChainSpec& spec) {
  check_spec(spec);
  if (!spec.imaginary() || std::abs(spec.gamma) >= 1)
    throw InvalidSpec("metric instruments need the unbroken imaginary kind");
  const int n = spec.n_sites;
  const mpr x = atanh(mpr(spec.gamma));
  const auto rho = rotation_matrix(n, mpc(mpr(0), -x));
  const auto rho_inv = rotation_matrix(n, mpc(mpr(0), x));
  auto h = multiply(multiply(rho, hamiltonian(spec), n), rho_inv, n);
  const mpr scale = sqrt(1 - mpr(spec.gamma) * mpr(spec.gamma));
  const auto bare = hamiltonian({spec.n_sites, 0.0, spec.kind});
  for (std::size_t i = 0; i < h.size(); ++i) h[i] -= scale * bare[i];
  return max_abs(h);
}

double ln_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw InvalidSpec("binomial arguments out of range");
  return static_cast<double>(lgamma(mpr(n) + 1) - lgamma(mpr(k) + 1) -
                             lgamma(mpr(n - k) + 1));
}

}  // namespace ptchain::precise
