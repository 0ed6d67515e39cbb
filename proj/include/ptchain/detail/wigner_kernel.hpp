#ifndef PTCHAIN_DETAIL_WIGNER_KERNEL_HPP
#define PTCHAIN_DETAIL_WIGNER_KERNEL_HPP

#include <algorithm>
#include <utility>
#include <vector>

namespace ptchain::detail {

inline std::pair<int, int> wigner_nu_range(int n_sites, int n, int l) {
  return {std::max(0, l - n), std::min(l - 1, n_sites - n)};
}

template <class ComplexT>
ComplexT pow_int(ComplexT base, int exp) {
  ComplexT result(1);
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

// Direct evaluation of the nu-sum for d_{n,l}. `factorial[k]` must hold k!
// in RealT up to k = n_sites - 1. Generic over the scalar so the same kernel
// serves both the double cross-check path and the extended-precision path.
template <class ComplexT, class RealT>
ComplexT wigner_nu_sum(int n_sites, int n, int l, const ComplexT& cos_half,
                       const ComplexT& neg_sin_half,
                       const std::vector<RealT>& factorial) {
  const int big_n = n_sites;
  const auto [lo, hi] = wigner_nu_range(big_n, n, l);
  using std::sqrt;
  const RealT pref = sqrt(factorial[big_n - n] * factorial[n - 1] *
                          factorial[big_n - l] * factorial[l - 1]);
  ComplexT sum(0);
  for (int nu = lo; nu <= hi; ++nu) {
    const int a = big_n - 1 + l - n - 2 * nu;
    const int b = n - l + 2 * nu;
    const RealT denom = factorial[l - 1 - nu] * factorial[big_n - n - nu] *
                        factorial[nu + n - l] * factorial[nu];
    ComplexT term = pow_int(cos_half, a) * pow_int(neg_sin_half, b) / denom;
    if (nu & 1) term = -term;
    sum += term;
  }
  return pref * sum;
}

}  // namespace ptchain::detail

#endif
