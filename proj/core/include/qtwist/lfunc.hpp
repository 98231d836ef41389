#ifndef QTWIST_LFUNC_HPP
#define QTWIST_LFUNC_HPP

#include <cstdint>

#include "qtwist/char_arith.hpp"
#include "qtwist/numeric.hpp"
#include "qtwist/rep.hpp"

namespace qtwist {

/// Log-gamma for complex z (Lanczos, with reflection for Re(z) < 1/2).
/// The imaginary part may differ from the principal branch by multiples of
/// 2 pi; only exp(log_gamma) is contract.
cplx log_gamma(cplx z);

cplx gamma_fn(cplx z);

/// Hurwitz zeta(s, x) for x in (0, 1], Euler-Maclaurin with shift N = 30 and
/// Bernoulli terms through B_30. Throws within 1e-6 of the pole s = 1.
cplx hurwitz_zeta(cplx s, double x);

/// L(s, chi) = n^{-s} sum_{a=1}^{n} chi(a) zeta(s, a/n); valid in the whole
/// computed plane away from s = 1.
cplx dirichlet_L(cplx s, const QuadraticCharacterHandle& chi);

/// Gamma((1-s)/2) / Gamma(s/2). Returns 0 at the zeros (s a nonpositive even
/// integer), throws at the poles (s an odd integer >= 1).
cplx gamma_ratio(cplx s);

/// Completed L-function of the primitive quadratic character chi^(d):
///   Lambda(s) = (|d|/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi^(d)),
/// with parity exponent a = 0 for even characters (d > 0) and a = 1 for odd
/// ones (d < 0); satisfies Lambda(s) = Lambda(1-s). At trivial zeros (where
/// the gamma pole meets an L zero) the value is recovered by a Cauchy disc
/// mean.
cplx completed_lambda_quadratic(const FundamentalDiscriminant& d, cplx s);

struct KSeriesResult {
    cplx value;
    double tail_bound;  // n Q^{1-Re(s)} / (Re(s)-1)
};

/// K(s, chi) = sum_{q>=1} tau(chi, q) q^{-s}, truncated at Q.
/// Requires Re(s) >= 1 + 1e-3 (absolute convergence via |tau| <= n).
KSeriesResult k_series(cplx s, const QuadraticCharacterHandle& chi, int64_t Q);

/// |L(s, chi_n) - pi^{s-1/2} n^{-s} gamma_ratio(s) K(1-s, chi_n)| for odd
/// non-square n == 1 (mod 4) and Re(s) < 0.
double cech_fe_residual(int64_t n, cplx s, int64_t Q);

struct TwistedReciprocal {
    cplx value;
    double trunc_estimate;
};

/// Truncated series for 1/L^(2)(z, pi x chi_n):
///   sum_{k odd, k <= K_eff} a_pi(k) chi_n(k) k^{-z} S(k/K),
/// S = 1 (smooth off, K_eff = K) or S(u) = exp(-u^2) (smooth on, K_eff = 6K).
TwistedReciprocal reciprocal_L_twist(const CoefficientSeries& series, int64_t n, cplx z,
                                     int64_t K, bool smooth);

/// Convenience overload building a coefficient table from the rep.
TwistedReciprocal reciprocal_L_twist(const SatakeSystem& rep, int64_t n, cplx z,
                                     int64_t K, bool smooth);

}  // namespace qtwist

#endif
