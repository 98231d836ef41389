#ifndef QTWIST_CHAR_ARITH_HPP
#define QTWIST_CHAR_ARITH_HPP

#include <cstdint>

#include "qtwist/numeric.hpp"

namespace qtwist {

/// Jacobi symbol (a/m) for odd positive m, extended to all integers a by
/// periodicity mod m. Values in {-1, 0, 1}.
int jacobi_symbol(int64_t a, int64_t m);

/// Kronecker symbol (m/q) for m == 0, 1 (mod 4) and any integer q,
/// including the 2-rule ((m/2) = 0 for even m, +-1 by m mod 8) and the
/// sign rule at negative q.
int kronecker_symbol(int64_t m, int64_t q);

enum class CharKind { jacobi_bottom, kronecker_top, aux_psi, principal };

/// A quadratic character: chi_m = (./m), chi^(m) = (m/.), psi_j = chi^(4j),
/// or the principal character mod 1.
struct QuadraticCharacterHandle {
    CharKind kind;
    int64_t parameter;

    static QuadraticCharacterHandle jacobi(int64_t m);     // chi_m, m odd > 0
    static QuadraticCharacterHandle kronecker(int64_t m);  // chi^(m), m = 0,1 mod 4
    static QuadraticCharacterHandle psi(int j);            // j in {+-1, +-2}; j = 0 -> principal
    static QuadraticCharacterHandle principal_char();

    int64_t modulus() const;  // period of the character
    bool is_principal() const;
};

/// chi(k) for any integer k. chi(0) = 0 unless the modulus is 1; negative k
/// through chi(-1)*chi(|k|).
int char_value(const QuadraticCharacterHandle& chi, int64_t k);

/// chi(-1).
int char_parity(const QuadraticCharacterHandle& chi);

struct FundamentalDiscriminant {
    int64_t d;
};

/// Squarefree kernel of n by trial division up to 1e6; throws if the
/// cofactor cannot be certified squarefree.
int64_t squarefree_kernel(int64_t n);

/// Discriminant d of the primitive character chi^(d) inducing chi_n
/// (n odd positive): d = +-kernel(n) by the residue mod 4, d = 1 for square n.
FundamentalDiscriminant fundamental_discriminant_of(int64_t n);

}  // namespace qtwist

#endif
