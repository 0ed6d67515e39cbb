#include "ptchain/angular.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "ptchain/detail/wigner_kernel.hpp"
#include "ptchain/linalg.hpp"
#include "ptchain/precise.hpp"

namespace ptchain {
namespace {

// Cancellation budget: once the term magnitudes exceed the result by this
// factor, double precision has lost too many digits and the entry is
// recomputed with the extended-precision kernel.
constexpr double kConditionLimit = 1e3;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_factorials(int n_max) {
  std::vector<double> lgf(static_cast<std::size_t>(n_max) + 1);
  for (int k = 0; k <= n_max; ++k) lgf[k] = std::lgamma(k + 1.0);
  return lgf;
}

struct EntryEval {
  Complex value;
  double condition;
};

// Log-domain assembly of the nu-sum: magnitudes as log|term|, phases tracked
// separately, recombined by log_stable_sum. `condition` is
// sum |term| / |sum term|, the factor by which cancellation amplifies the
// rounding of individual terms.
EntryEval wigner_log_entry(int n_sites, int n, int l, Complex beta,
                           const std::vector<double>& lgf) {
  const Complex c = std::cos(0.5 * beta);
  const Complex s = -std::sin(0.5 * beta);
  const double log_c = std::abs(c) > 0 ? std::log(std::abs(c)) : kNegInf;
  const double log_s = std::abs(s) > 0 ? std::log(std::abs(s)) : kNegInf;
  const double arg_c = std::arg(c);
  const double arg_s = std::arg(s);
  const double pref =
      0.5 * (lgf[n_sites - n] + lgf[n - 1] + lgf[n_sites - l] + lgf[l - 1]);

  const auto [lo, hi] = detail::wigner_nu_range(n_sites, n, l);
  std::vector<LogTerm> terms;
  terms.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int nu = lo; nu <= hi; ++nu) {
    const int a = n_sites - 1 + l - n - 2 * nu;
    const int b = n - l + 2 * nu;
    double log_mag = pref - lgf[l - 1 - nu] - lgf[n_sites - n - nu] -
                     lgf[nu + n - l] - lgf[nu];
    if (a != 0) log_mag += a * log_c;
    if (b != 0) log_mag += b * log_s;
    Complex phase = std::polar(1.0, a * arg_c + b * arg_s);
    if (nu & 1) phase = -phase;
    terms.push_back({log_mag, phase});
  }

  const Complex value = log_stable_sum(terms);

  double top = kNegInf;
  for (const auto& t : terms) top = std::max(top, t.log_mag);
  if (top == kNegInf) return {Complex(0.0, 0.0), 1.0};
  double mag = 0.0;
  Complex tot(0.0, 0.0);
  for (const auto& t : terms) {
    const double e = std::exp(t.log_mag - top);
    mag += e;
    tot += e * t.phase;
  }
  const double denom = std::abs(tot);
  const double condition =
      denom > 0 ? mag / denom : std::numeric_limits<double>::infinity();
  return {value, condition};
}

void check_entry_args(int n_sites, int n, int l, Complex beta) {
  if (n_sites < 1) throw InvalidSpec("need at least one site");
  if (n_sites > 4096) throw TooLarge("dense rotation limited to 4096 sites");
  if (n < 1 || n > n_sites || l < 1 || l > n_sites)
    throw IndexOutOfRange("rotation indices must lie in 1..N");
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
    throw InvalidSpec("angle must be finite");
}

}  // namespace

AngularOps angular_ops(int n_sites) {
  if (n_sites < 1) throw InvalidSpec("need at least one site");
  if (n_sites > 4096) throw TooLarge("dense representation limited to 4096 sites");
  AngularOps ops;
  ops.n_sites = n_sites;
  ops.j_plus = ComplexMatrix::Zero(n_sites, n_sites);
  ops.j_minus = ComplexMatrix::Zero(n_sites, n_sites);
  ops.j_z = ComplexMatrix::Zero(n_sites, n_sites);
  for (int l = 1; l < n_sites; ++l) {
    const double amp = std::sqrt(static_cast<double>(l) * (n_sites - l));
    ops.j_plus(l - 1, l) = amp;
    ops.j_minus(l, l - 1) = amp;
  }
  for (int l = 1; l <= n_sites; ++l)
    ops.j_z(l - 1, l - 1) = (n_sites + 1) / 2.0 - l;
  ops.j_x = 0.5 * (ops.j_plus + ops.j_minus);
  ops.j_y = Complex(0.0, -0.5) * (ops.j_plus - ops.j_minus);
  return ops;
}

MixingAngle beta_angle(double gamma, PotentialKind kind) {
  if (!std::isfinite(gamma)) throw InvalidSpec("gamma must be finite");
  if (kind == PotentialKind::Real)
    return {Complex(std::atan2(1.0, gamma), 0.0)};
  const double mag = std::abs(gamma);
  if (mag == 1.0)
    throw EPSingular("mixing angle is undefined at the exceptional point");
  if (mag < 1.0)
    return {Complex(std::numbers::pi / 2, -std::atanh(gamma))};
  return {Complex(0.0, -std::atanh(1.0 / gamma))};
}

Complex wigner_d(int n_sites, int n, int l, Complex beta) {
  check_entry_args(n_sites, n, l, beta);
  const auto lgf = log_factorials(n_sites);
  const EntryEval eval = wigner_log_entry(n_sites, n, l, beta, lgf);
  if (eval.condition < kConditionLimit) return eval.value;
  return precise::wigner_entry(n_sites, n, l, beta);
}

ComplexMatrix rotation_operator(int n_sites, Complex theta) {
  check_entry_args(n_sites, 1, 1, theta);
  const auto lgf = log_factorials(n_sites);
  ComplexMatrix d(n_sites, n_sites);
  std::vector<std::pair<int, int>> retry;
  for (int n = 1; n <= n_sites; ++n)
    for (int l = 1; l <= n_sites; ++l) {
      const EntryEval eval = wigner_log_entry(n_sites, n, l, theta, lgf);
      if (eval.condition < kConditionLimit)
        d(n - 1, l - 1) = eval.value;
      else
        retry.emplace_back(n, l);
    }
  if (!retry.empty()) {
    const auto values = precise::wigner_fill(n_sites, theta, retry);
    for (std::size_t k = 0; k < retry.size(); ++k)
      d(retry[k].first - 1, retry[k].second - 1) = values[k];
  }
  return d;
}

namespace detail {

Complex wigner_d_direct(int n_sites, int n, int l, Complex beta) {
  check_entry_args(n_sites, n, l, beta);
  if (n_sites > 30)
    throw TooLarge("direct factorial evaluation limited to 30 sites");
  std::vector<double> fact(static_cast<std::size_t>(n_sites) + 1);
  fact[0] = 1.0;
  for (int k = 1; k <= n_sites; ++k) fact[k] = fact[k - 1] * k;
  const Complex c = std::cos(0.5 * beta);
  const Complex s = -std::sin(0.5 * beta);
  return wigner_nu_sum(n_sites, n, l, c, s, fact);
}

}  // namespace detail

}  // namespace ptchain
