#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "qtwist/char_arith.hpp"

using namespace qtwist;

namespace {

// Legendre symbol by brute-force quadratic-residue table, odd prime p.
int legendre_table(int64_t a, int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    for (int64_t r = 1; r < p; ++r)
        if ((r * r) % p == a) return 1;
    return -1;
}

// Jacobi symbol from the Legendre oracle via the factorization of m.
int jacobi_oracle(int64_t a, int64_t m) {
    int r = 1;
    int64_t rest = m;
    for (int64_t p = 3; p * p <= rest; p += 2) {
        while (rest % p == 0) {
            r *= legendre_table(a, p);
            rest /= p;
        }
    }
    if (rest > 1) r *= legendre_table(a, rest);
    return r;
}

}  // namespace

TEST_CASE("jacobi symbol against the quadratic-residue oracle") {
    CHECK(jacobi_symbol(2, 15) == 1);  // (2/3)(2/5) = (-1)(-1)
    CHECK(jacobi_symbol(7, 1) == 1);
    CHECK(jacobi_symbol(3, 9) == 0);
    for (int64_t m = 1; m <= 99; m += 2)
        for (int64_t a = -200; a <= 200; ++a)
            CHECK(jacobi_symbol(a, m) == jacobi_oracle(a, m));
}

TEST_CASE("jacobi symbol rejects bad moduli") {
    CHECK_THROWS_AS(jacobi_symbol(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(1, -3), std::invalid_argument);
}

TEST_CASE("kronecker symbol spot values and 2-rule") {
    CHECK(kronecker_symbol(5, 3) == -1);
    CHECK(kronecker_symbol(5, 2) == -1);  // 5 == 5 (mod 8)
    for (int64_t j = 1; j <= 99; j += 2) CHECK(kronecker_symbol(4, j) == 1);
    CHECK(kronecker_symbol(4, 2) == 0);
    CHECK_THROWS_AS(kronecker_symbol(3, 5), std::invalid_argument);
    CHECK_THROWS_AS(kronecker_symbol(6, 5), std::invalid_argument);
}

TEST_CASE("kronecker vs jacobi on odd positive entries") {
    // for m == 1 (mod 4), q odd positive: (m/q) = (q/m) by reciprocity
    for (int64_t m = 5; m <= 101; m += 4)
        for (int64_t q = 1; q <= 99; q += 2)
            CHECK(kronecker_symbol(m, q) == jacobi_symbol(q, m));
}

TEST_CASE("char_value dispatch and psi characters") {
    auto chi15 = QuadraticCharacterHandle::jacobi(15);
    CHECK(char_value(chi15, 2) == 1);

    auto psi_m1 = QuadraticCharacterHandle::psi(-1);  // chi^(-4)
    CHECK(char_value(psi_m1, 3) == -1);
    for (int64_t j = 1; j <= 199; j += 2) {
        int expect = ((j - 1) / 2) % 2 == 0 ? 1 : -1;  // (-1)^((j-1)/2)
        CHECK(char_value(psi_m1, j) == expect);
    }
    CHECK(char_value(QuadraticCharacterHandle::psi(0), 5) == 1);
    CHECK(QuadraticCharacterHandle::psi(0).is_principal());
    CHECK_THROWS_AS(QuadraticCharacterHandle::psi(3), std::invalid_argument);
}

TEST_CASE("char_value at zero and negatives") {
    auto chi5 = QuadraticCharacterHandle::jacobi(5);
    CHECK(char_value(chi5, 0) == 0);
    auto chi1 = QuadraticCharacterHandle::jacobi(1);
    CHECK(char_value(chi1, 0) == 1);
    // chi_5(-1) = 1 (5 == 1 mod 4), chi_3(-1) = -1
    CHECK(char_parity(QuadraticCharacterHandle::jacobi(5)) == 1);
    CHECK(char_parity(QuadraticCharacterHandle::jacobi(3)) == -1);
    for (int64_t k = 1; k <= 50; ++k) {
        CHECK(char_value(chi5, -k) == char_parity(chi5) * char_value(chi5, k));
    }
}

TEST_CASE("complete multiplicativity") {
    std::vector<QuadraticCharacterHandle> chars = {
        QuadraticCharacterHandle::jacobi(15), QuadraticCharacterHandle::jacobi(21),
        QuadraticCharacterHandle::kronecker(5), QuadraticCharacterHandle::kronecker(-8),
        QuadraticCharacterHandle::psi(2)};
    for (const auto& chi : chars)
        for (int64_t a = -200; a <= 200; ++a)
            for (int64_t b : {-17, -4, 2, 3, 9, 25, 199})
                CHECK(char_value(chi, a * b) == char_value(chi, a) * char_value(chi, b));
}

TEST_CASE("quadratic reciprocity") {
    for (int64_t m = 1; m <= 299; m += 2) {
        for (int64_t n = 1; n <= 299; n += 2) {
            if (std::gcd(m, n) != 1) continue;
            int sign = ((m - 1) / 2 * ((n - 1) / 2)) % 2 == 0 ? 1 : -1;
            CHECK(jacobi_symbol(m, n) * jacobi_symbol(n, m) == sign);
        }
    }
}

TEST_CASE("character identification chi^(+-4n) = chi_n") {
    for (int64_t n = 1; n <= 199; n += 2) {
        auto chi_n = QuadraticCharacterHandle::jacobi(n);
        int64_t top = (n % 4 == 1) ? 4 * n : -4 * n;
        auto chi_top = QuadraticCharacterHandle::kronecker(top);
        for (int64_t k = 1; k <= 500; k += 2)
            CHECK(char_value(chi_top, k) == char_value(chi_n, k));
        for (int64_t k = 2; k <= 500; k += 2) CHECK(char_value(chi_top, k) == 0);
    }
}

TEST_CASE("squarefree kernel and fundamental discriminants") {
    CHECK(fundamental_discriminant_of(5).d == 5);
    CHECK(fundamental_discriminant_of(45).d == 5);
    CHECK(fundamental_discriminant_of(3).d == -3);
    CHECK(fundamental_discriminant_of(9).d == 1);
    CHECK(squarefree_kernel(45) == 5);
    CHECK(squarefree_kernel(1) == 1);
    CHECK_THROWS_AS(fundamental_discriminant_of(4), std::invalid_argument);

    // inducer identity: chi_n(k) = chi^(d)(k) for k coprime to 2n
    for (int64_t n = 1; n <= 299; n += 2) {
        auto d = fundamental_discriminant_of(n);
        auto chi_n = QuadraticCharacterHandle::jacobi(n);
        auto chi_d = QuadraticCharacterHandle::kronecker(d.d);
        for (int64_t k = 1; k <= 1000; k += 2) {
            if (std::gcd(k, n) != 1) continue;
            CHECK(char_value(chi_n, k) == char_value(chi_d, k));
        }
    }
}
