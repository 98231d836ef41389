#include "qtwist/char_arith.hpp"

#include <stdexcept>
#include <utility>

namespace qtwist {

int jacobi_symbol(int64_t a, int64_t m) {
    if (m <= 0 || (m & 1) == 0)
        throw std::invalid_argument("jacobi_symbol: modulus must be odd positive");
    a %= m;
    if (a < 0) a += m;
    int r = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int64_t n8 = m & 7;
            if (n8 == 3 || n8 == 5) r = -r;
        }
        std::swap(a, m);
        if ((a & 3) == 3 && (m & 3) == 3) r = -r;
        a %= m;
    }
    return m == 1 ? r : 0;
}

// Cohen, Algorithm 1.4.10, specialized to top entries m == 0,1 (mod 4).
int kronecker_symbol(int64_t m, int64_t q) {
    int64_t m4 = ((m % 4) + 4) % 4;
    if (m4 == 2 || m4 == 3)
        throw std::invalid_argument("kronecker_symbol: need m == 0 or 1 (mod 4)");
    int64_t a = m, n = q;
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    int k = 1;
    if (v & 1) {
        int64_t a8 = ((a % 8) + 8) % 8;  // a odd here
        if (a8 == 3 || a8 == 5) k = -1;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            int64_t n8 = n & 7;
            if (n8 == 3 || n8 == 5) k = -k;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

QuadraticCharacterHandle QuadraticCharacterHandle::jacobi(int64_t m) {
    if (m <= 0 || (m & 1) == 0)
        throw std::invalid_argument("chi_m requires odd positive m");
    return {CharKind::jacobi_bottom, m};
}

QuadraticCharacterHandle QuadraticCharacterHandle::kronecker(int64_t m) {
    int64_t m4 = ((m % 4) + 4) % 4;
    if (m == 0 || m4 == 2 || m4 == 3)
        throw std::invalid_argument("chi^(m) requires nonzero m == 0 or 1 (mod 4)");
    return {CharKind::kronecker_top, m};
}

QuadraticCharacterHandle QuadraticCharacterHandle::psi(int j) {
    if (j == 0) return principal_char();
    if (j < -2 || j > 2)
        throw std::invalid_argument("psi_j requires j in {+-1, +-2}");
    return {CharKind::aux_psi, j};
}

QuadraticCharacterHandle QuadraticCharacterHandle::principal_char() {
    return {CharKind::principal, 0};
}

int64_t QuadraticCharacterHandle::modulus() const {
    switch (kind) {
        case CharKind::jacobi_bottom: return parameter;
        case CharKind::kronecker_top: return parameter < 0 ? -parameter : parameter;
        case CharKind::aux_psi: return 4 * (parameter < 0 ? -parameter : parameter);
        case CharKind::principal: return 1;
    }
    return 1;
}

bool QuadraticCharacterHandle::is_principal() const {
    return kind == CharKind::principal ||
           (kind == CharKind::jacobi_bottom && parameter == 1) ||
           (kind == CharKind::kronecker_top && parameter == 1);
}

int char_value(const QuadraticCharacterHandle& chi, int64_t k) {
    switch (chi.kind) {
        case CharKind::jacobi_bottom: {
            if (k == 0) return chi.parameter == 1 ? 1 : 0;
            if (k < 0) {
                int sign = ((chi.parameter - 1) / 2) % 2 == 0 ? 1 : -1;  // chi_m(-1)
                return sign * jacobi_symbol(-k, chi.parameter);
            }
            return jacobi_symbol(k, chi.parameter);
        }
        case CharKind::kronecker_top:
            return kronecker_symbol(chi.parameter, k);
        case CharKind::aux_psi:
            return kronecker_symbol(4 * chi.parameter, k);
        case CharKind::principal:
            return 1;
    }
    return 0;
}

int char_parity(const QuadraticCharacterHandle& chi) { return char_value(chi, -1); }

int64_t squarefree_kernel(int64_t n) {
    if (n <= 0) throw std::invalid_argument("squarefree_kernel: need n >= 1");
    constexpr int64_t kTrialBound = 1000000;
    int64_t kernel = 1;
    int64_t rest = n;
    for (int64_t d = 2; d <= kTrialBound && d * d <= rest; ++d) {
        if (rest % d != 0) continue;
        int e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        if (e & 1) kernel *= d;
    }
    if (rest > 1) {
        if (is_perfect_square(rest)) {
            // p^2 with p beyond the trial bound: even exponent, no kernel part
        } else if (rest <= kTrialBound * kTrialBound) {
            // no prime factor <= 1e6 and not a square => prime, hence squarefree
            kernel *= rest;
        } else {
            throw std::invalid_argument(
                "squarefree_kernel: cofactor too large to certify squarefree");
        }
    }
    return kernel;
}

FundamentalDiscriminant fundamental_discriminant_of(int64_t n) {
    if (n <= 0 || (n & 1) == 0)
        throw std::invalid_argument("fundamental_discriminant_of: need odd positive n");
    int64_t n0 = squarefree_kernel(n);
    if (n0 == 1) return {1};
    return {n0 % 4 == 1 ? n0 : -n0};
}

}  // namespace qtwist
