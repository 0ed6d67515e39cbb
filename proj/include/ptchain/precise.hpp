#ifndef PTCHAIN_PRECISE_HPP
#define PTCHAIN_PRECISE_HPP

#include <span>
#include <utility>
#include <vector>

#include "ptchain/types.hpp"

// Extended-precision instruments. Everything here is evaluated with 50-digit
// floats and rounded to double only on return, so the results measure the
// mathematical objects rather than double-precision rounding. Used as the
// fallback for ill-conditioned rotation entries and as the measuring device
// for identities whose double-precision residual is dominated by the
// conditioning of the similarity transform.
namespace ptchain::precise {

Complex wigner_entry(int n_sites, int n, int l, Complex beta);

// Batch form: re-evaluates the listed (n, l) entries (1-based) at theta.
std::vector<Complex> wigner_fill(int n_sites, Complex beta,
                                 std::span<const std::pair<int, int>> indices);

// max |D(beta) D(beta)^T - I|; the orthogonality identity holds for any
// complex beta, so this isolates evaluation error in the entries.
double orthonormality_defect(int n_sites, Complex beta);

// max |sum_n psi_n(l) psi_n(l') - delta_{l,l'}| with beta derived from spec
// in extended precision.
double gram_defect(const ChainSpec& spec);

// max |eta H - (eta H)^dagger| with eta = exp(2 atanh(gamma) J_y).
double pseudo_hermiticity_defect(const ChainSpec& spec);

// max |rho H rho^{-1} - sqrt(1 - gamma^2) H_0| with rho = exp(atanh(gamma) J_y).
double counterpart_defect(const ChainSpec& spec);

// ln C(n, k) from extended-precision factorials.
double ln_binomial(int n, int k);

}  // namespace ptchain::precise

#endif
