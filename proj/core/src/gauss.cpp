#include "qtwist/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qtwist {

cplx tau_direct(const QuadraticCharacterHandle& chi, int64_t q) {
    if (q < 1) throw std::invalid_argument("tau_direct: need q >= 1");
    int64_t n = chi.modulus();
    KahanSumC acc;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int64_t j = 0; j < n; ++j) {
        int c = char_value(chi, j);
        if (c == 0) continue;
        int64_t phase = static_cast<int64_t>((static_cast<int128>(j) * q) % n);
        double angle = two_pi * static_cast<double>(phase) / static_cast<double>(n);
        acc.add(static_cast<double>(c) * cplx{std::cos(angle), std::sin(angle)});
    }
    if (n == 1) return {1.0, 0.0};  // single j = 0 term, chi(0) = 1 mod 1
    return acc.value();
}

cplx g_direct(int64_t n, int64_t q) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("g_direct: need odd positive n");
    cplx t = tau_direct(QuadraticCharacterHandle::jacobi(n), q);
    return (n % 4 == 1) ? t : cplx{0.0, -1.0} * t;
}

namespace {

// Exact value c * sqrt(r), c integer, r squarefree.
struct SqrtValue {
    int128 coeff;
    int64_t radical;
};

SqrtValue g_prime_power_exact(int64_t p, int k, int64_t q) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p))
        throw std::invalid_argument("g_prime_power: need odd prime p");
    if (k < 0) throw std::invalid_argument("g_prime_power: need k >= 0");
    if (q < 1) throw std::invalid_argument("g_prime_power: need q >= 1");
    int a = 0;
    int64_t qq = q;
    while (qq % p == 0) {
        qq /= p;
        ++a;
    }
    if (k == 0) return {1, 1};
    if (k <= a) {
        if (k & 1) return {0, 1};
        int128 pk = 1;
        for (int i = 0; i < k; ++i) pk = checked_mul(pk, p);
        return {pk - pk / p, 1};  // phi(p^k)
    }
    if (k == a + 1) {
        int128 pa = 1;
        for (int i = 0; i < a; ++i) pa = checked_mul(pa, p);
        if (k % 2 == 0) return {-pa, 1};
        int leg = jacobi_symbol(qq, p);  // (q p^-a / p)
        return {leg * pa, p};
    }
    return {0, 1};
}

}  // namespace

double g_prime_power(int64_t p, int k, int64_t q) {
    SqrtValue v = g_prime_power_exact(p, k, q);
    return static_cast<double>(v.coeff) * std::sqrt(static_cast<double>(v.radical));
}

double g_closed(int64_t n, int64_t q) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("g_closed: need odd positive n");
    if (q < 1) throw std::invalid_argument("g_closed: need q >= 1");
    SqrtValue acc{1, 1};
    int64_t rest = n;
    for (int64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p != 0) continue;
        int k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        SqrtValue v = g_prime_power_exact(p, k, q);
        acc.coeff = checked_mul(acc.coeff, v.coeff);
        acc.radical = static_cast<int64_t>(checked_mul(acc.radical, v.radical));
    }
    if (rest > 1) {
        SqrtValue v = g_prime_power_exact(rest, 1, q);
        acc.coeff = checked_mul(acc.coeff, v.coeff);
        acc.radical = static_cast<int64_t>(checked_mul(acc.radical, v.radical));
    }
    return static_cast<double>(acc.coeff) * std::sqrt(static_cast<double>(acc.radical));
}

cplx tau_4l_transform(int64_t l, int64_t q) {
    if (l <= 0 || (l & 1) == 0)
        throw std::invalid_argument("tau_4l_transform: need odd positive l");
    if (q < 1) throw std::invalid_argument("tau_4l_transform: need q >= 1");
    if (l % 4 == 1) {
        if (q & 1) return {0.0, 0.0};
        cplx t = tau_direct(QuadraticCharacterHandle::jacobi(l), q);
        return (q % 4 == 2) ? -2.0 * t : 2.0 * t;
    }
    if (q % 2 == 0) return {0.0, 0.0};
    cplx t = tau_direct(QuadraticCharacterHandle::jacobi(l), q);
    cplx i2{0.0, 2.0};
    return (q % 4 == 1) ? -i2 * t : i2 * t;
}

GaussSumRecord gauss_sum_record(int64_t n, int64_t q) {
    GaussSumRecord rec;
    rec.n = n;
    rec.q = q;
    rec.direct = tau_direct(QuadraticCharacterHandle::jacobi(n), q);
    rec.closed = g_closed(n, q);
    cplx normalized = (n % 4 == 1) ? rec.direct : cplx{0.0, -1.0} * rec.direct;
    rec.abs_err = std::abs(normalized - cplx{rec.closed, 0.0});
    return rec;
}

}  // namespace qtwist
