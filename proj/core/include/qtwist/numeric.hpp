#ifndef QTWIST_NUMERIC_HPP
#define QTWIST_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace qtwist {

using cplx = std::complex<double>;
using int128 = __int128;

/// Neumaier-compensated accumulator. add() is exact up to one rounding of
/// the final value(); used for every sum long enough for drift to matter.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct KahanSumC {
    KahanSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

/// Smallest-prime-factor table for 0..n (spf[0] = spf[1] = 0).
std::vector<int32_t> smallest_prime_factor(int64_t n);

/// Primes in [2, n].
std::vector<int64_t> primes_up_to(int64_t n);

bool is_prime(int64_t n);

/// Largest integer r with r*r <= n.
int64_t isqrt(int64_t n);

bool is_perfect_square(int64_t n);

/// a*b with overflow detection; throws std::overflow_error.
int128 checked_mul(int128 a, int128 b);

}  // namespace qtwist

#endif
