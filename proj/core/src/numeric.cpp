#include "qtwist/numeric.hpp"

#include <stdexcept>

namespace qtwist {

std::vector<int32_t> smallest_prime_factor(int64_t n) {
    std::vector<int32_t> spf(static_cast<size_t>(n) + 1, 0);
    for (int64_t i = 2; i <= n; ++i) spf[i] = static_cast<int32_t>(i);
    for (int64_t i = 2; i * i <= n; ++i) {
        if (spf[i] != i) continue;
        for (int64_t j = i * i; j <= n; j += i)
            if (spf[j] == j) spf[j] = static_cast<int32_t>(i);
    }
    return spf;
}

std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<int64_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    for (int64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (int64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int64_t isqrt(int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(int64_t n) {
    if (n < 0) return false;
    int64_t r = isqrt(n);
    return r * r == n;
}

int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("128-bit multiplication overflow");
    return r;
}

}  // namespace qtwist
