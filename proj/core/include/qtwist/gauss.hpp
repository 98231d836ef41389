#ifndef QTWIST_GAUSS_HPP
#define QTWIST_GAUSS_HPP

#include <cstdint>

#include "qtwist/char_arith.hpp"
#include "qtwist/numeric.hpp"

namespace qtwist {

/// tau(chi, q) = sum_{j mod n} chi(j) e(jq/n), evaluated term by term with
/// exactly reduced phases.
cplx tau_direct(const QuadraticCharacterHandle& chi, int64_t q);

/// G(chi_n, q): tau(chi_n, q) for n == 1 (mod 4), -i tau(chi_n, q) for
/// n == 3 (mod 4). Real up to rounding.
cplx g_direct(int64_t n, int64_t q);

/// Closed form of G(chi_{p^k}, q) for odd prime p, with a = v_p(q):
///   phi(p^k)            k <= a, k even
///   0                   k <= a, k odd
///   -p^a                k = a+1, k even
///   (q p^-a / p) p^a sqrt(p)   k = a+1, k odd
///   0                   k >= a+2
double g_prime_power(int64_t p, int k, int64_t q);

/// G(chi_n, q) as the product of g_prime_power over the factorization of n.
/// Tracked internally as (integer coefficient, squarefree radical), converted
/// to double at the boundary.
double g_closed(int64_t n, int64_t q);

/// Predicted tau(chi^(4l), q) computed from tau(chi_l, q) by the
/// Gauss-sum transformation lemma (six cases by l, q mod 4).
cplx tau_4l_transform(int64_t l, int64_t q);

struct GaussSumRecord {
    int64_t n = 0;
    int64_t q = 0;
    cplx direct;      // tau(chi_n, q)
    double closed = 0.0;  // closed-form G(chi_n, q)
    double abs_err = 0.0; // |G_direct - closed| after applying the normalizing factor
};

GaussSumRecord gauss_sum_record(int64_t n, int64_t q);

}  // namespace qtwist

#endif
