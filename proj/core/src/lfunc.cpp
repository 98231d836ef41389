#include "qtwist/lfunc.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qtwist {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 607/128 (Godfrey), ~1e-13 relative.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,     -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4, 0.36899182659531622704e-5};

cplx log_gamma_core(cplx z) {  // Re(z) >= 1/2
    cplx acc = kLanczos[0];
    for (size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z - 1.0 + static_cast<double>(i));
    cplx t = z + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// B_{2j} for j = 1..15.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

bool near_nonpositive_integer(cplx z, double tol) {
    if (z.real() > 0.5 || std::abs(z.imag()) > tol) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

// q^{-s} for positive integer q.
inline cplx inv_pow(double q, cplx s) { return std::exp(-s * std::log(q)); }

}  // namespace

cplx log_gamma(cplx z) {
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    cplx s = std::sin(kPi * z);
    if (std::abs(s) == 0.0) throw std::domain_error("log_gamma: pole at nonpositive integer");
    return std::log(kPi) - std::log(s) - log_gamma_core(1.0 - z);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx hurwitz_zeta(cplx s, double x) {
    if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("hurwitz_zeta: need x in (0, 1]");
    if (std::abs(s - cplx{1.0, 0.0}) < 1e-6)
        throw std::domain_error("hurwitz_zeta: s too close to the pole at 1");
    constexpr int N = 30;  // shift
    constexpr int J = 15;  // Bernoulli depth: through B_30
    KahanSumC head;
    for (int k = 0; k < N; ++k) head.add(inv_pow(x + k, s));
    double y = x + N;
    cplx y_ms = inv_pow(y, s);  // y^{-s}
    cplx res = head.value() + y_ms * y / (s - 1.0) + 0.5 * y_ms;
    cplx ypow = y_ms / y;  // y^{-s-2j+1}, j = 1
    cplx poch = s;         // s (s+1) ... (s+2j-2)
    static const std::array<double, J> b_over_fact = [] {
        std::array<double, J> a{};
        double fact = 1.0;
        for (int j = 1; j <= J; ++j) {
            fact *= (2.0 * j - 1.0) * (2.0 * j);
            a[j - 1] = kBernoulli[j - 1] / fact;
        }
        return a;
    }();
    for (int j = 1; j <= J; ++j) {
        res += b_over_fact[j - 1] * poch * ypow;
        ypow /= y * y;
        poch *= (s + (2.0 * j - 1.0)) * (s + (2.0 * j));
    }
    return res;
}

cplx dirichlet_L(cplx s, const QuadraticCharacterHandle& chi) {
    int64_t n = chi.modulus();
    if (n == 1) return hurwitz_zeta(s, 1.0);
    KahanSumC acc;
    for (int64_t a = 1; a <= n; ++a) {
        int c = char_value(chi, a);
        if (c == 0) continue;
        acc.add(static_cast<double>(c) *
                hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(n)));
    }
    return inv_pow(static_cast<double>(n), s) * acc.value();
}

cplx gamma_ratio(cplx s) {
    cplx num = (1.0 - s) / 2.0;
    cplx den = s / 2.0;
    if (near_nonpositive_integer(num, 1e-9))
        throw std::domain_error("gamma_ratio: pole (1-s)/2 at a nonpositive integer");
    if (near_nonpositive_integer(den, 1e-9)) return {0.0, 0.0};
    return std::exp(log_gamma(num) - log_gamma(den));
}

namespace {

cplx lambda_point(int64_t abs_d, int parity, cplx s, const QuadraticCharacterHandle& chi) {
    cplx w = (s + static_cast<double>(parity)) / 2.0;
    return std::exp(w * std::log(static_cast<double>(abs_d) / kPi)) * gamma_fn(w) *
           dirichlet_L(s, chi);
}

}  // namespace

cplx completed_lambda_quadratic(const FundamentalDiscriminant& d, cplx s) {
    if (d.d == 0) throw std::invalid_argument("completed_lambda_quadratic: d = 0");
    auto chi = QuadraticCharacterHandle::kronecker(d.d);
    int64_t abs_d = d.d < 0 ? -d.d : d.d;
    int parity = d.d < 0 ? 1 : 0;
    if (abs_d == 1 && (std::abs(s) < 1e-6 || std::abs(s - cplx{1.0, 0.0}) < 1e-6))
        throw std::domain_error("completed_lambda_quadratic: pole of completed zeta");
    cplx w = (s + static_cast<double>(parity)) / 2.0;
    if (abs_d > 1 && near_nonpositive_integer(w, 0.05)) {
        // trivial zero: gamma pole cancels an L zero; recover the analytic
        // value as the mean over a circle (trapezoid rule is spectral here)
        constexpr int kNodes = 64;
        constexpr double kRadius = 0.4;
        KahanSumC acc;
        for (int j = 0; j < kNodes; ++j) {
            double t = 2.0 * kPi * (j + 0.5) / kNodes;
            acc.add(lambda_point(abs_d, parity, s + kRadius * cplx{std::cos(t), std::sin(t)},
                                 chi));
        }
        return acc.value() / static_cast<double>(kNodes);
    }
    return lambda_point(abs_d, parity, s, chi);
}

KSeriesResult k_series(cplx s, const QuadraticCharacterHandle& chi, int64_t Q) {
    if (s.real() < 1.0 + 1e-3)
        throw std::domain_error("k_series: need Re(s) >= 1 + 1e-3 for absolute convergence");
    if (Q < 1) throw std::invalid_argument("k_series: need Q >= 1");
    int64_t n = chi.modulus();
    // tau(chi, q) has period n in q
    std::vector<cplx> tau_table(static_cast<size_t>(n));
    for (int64_t r = 0; r < n; ++r) {
        KahanSumC acc;
        for (int64_t j = 0; j < n; ++j) {
            int c = char_value(chi, j);
            if (c == 0) continue;
            int64_t ph = static_cast<int64_t>((static_cast<int128>(j) * r) % n);
            double ang = 2.0 * kPi * static_cast<double>(ph) / static_cast<double>(n);
            acc.add(static_cast<double>(c) * cplx{std::cos(ang), std::sin(ang)});
        }
        tau_table[static_cast<size_t>(r)] = (n == 1) ? cplx{1.0, 0.0} : acc.value();
    }
    KahanSumC sum;
    if (s.imag() == 0.0) {
        double sr = s.real();
        for (int64_t q = 1; q <= Q; ++q)
            sum.add(tau_table[static_cast<size_t>(q % n)] *
                    std::exp(-sr * std::log(static_cast<double>(q))));
    } else {
        for (int64_t q = 1; q <= Q; ++q)
            sum.add(tau_table[static_cast<size_t>(q % n)] * inv_pow(static_cast<double>(q), s));
    }
    double sigma = s.real();
    double tail = static_cast<double>(n) *
                  std::pow(static_cast<double>(Q), 1.0 - sigma) / (sigma - 1.0);
    return {sum.value(), tail};
}

double cech_fe_residual(int64_t n, cplx s, int64_t Q) {
    if (n <= 0 || (n & 1) == 0)
        throw std::invalid_argument("cech_fe_residual: need odd positive n");
    if (is_perfect_square(n))
        throw std::invalid_argument("cech_fe_residual: n must not be a perfect square");
    if (n % 4 != 1)
        throw std::invalid_argument("cech_fe_residual: chi_n must be even (n == 1 mod 4)");
    if (s.real() >= 0.0)
        throw std::invalid_argument("cech_fe_residual: need Re(s) < 0");
    auto chi = QuadraticCharacterHandle::jacobi(n);
    cplx lhs = dirichlet_L(s, chi);
    cplx rhs = std::exp((s - 0.5) * std::log(kPi)) * inv_pow(static_cast<double>(n), s) *
               gamma_ratio(s) * k_series(1.0 - s, chi, Q).value;
    return std::abs(lhs - rhs);
}

TwistedReciprocal reciprocal_L_twist(const CoefficientSeries& series, int64_t n, cplx z,
                                     int64_t K, bool smooth) {
    if (K < 16) throw std::invalid_argument("reciprocal_L_twist: need K >= 16");
    if (n <= 0 || (n & 1) == 0)
        throw std::invalid_argument("reciprocal_L_twist: need odd positive n");
    int64_t keff = smooth ? 6 * K : K;
    if (keff > series.bound())
        throw std::invalid_argument("reciprocal_L_twist: coefficient table too short");
    double sigma = z.real();
    bool real_z = (z.imag() == 0.0);
    KahanSumC val;
    KahanSum est_smooth;   // sum |a| k^-sigma |S(k/2K) - S(k/K)|
    KahanSum est_block;    // sum |a| k^-sigma over the last dyadic block
    int64_t block_lo = smooth ? 3 * K : K / 2;
    for (int64_t k = 1; k <= keff; k += 2) {
        double a = series.at(k);
        if (a == 0.0) continue;
        int c = (n == 1) ? 1 : jacobi_symbol(k, n);
        double lg = std::log(static_cast<double>(k));
        double amag = std::abs(a) * std::exp(-sigma * lg);
        double u = static_cast<double>(k) / static_cast<double>(K);
        double s1 = smooth ? std::exp(-u * u) : 1.0;
        if (c != 0) {
            double term = static_cast<double>(c) * s1;
            if (real_z)
                val.add(cplx{a * term * std::exp(-sigma * lg), 0.0});
            else
                val.add(a * term * std::exp(-z * lg));
        }
        if (smooth) {
            double s2 = std::exp(-u * u / 4.0);  // S(k/(2K))
            est_smooth.add(amag * std::abs(s2 - s1));
            if (k > block_lo) est_block.add(amag * s2);
        } else {
            if (k > block_lo) est_block.add(amag);
        }
    }
    double est = smooth ? est_smooth.value() + est_block.value() : est_block.value();
    return {val.value(), est};
}

TwistedReciprocal reciprocal_L_twist(const SatakeSystem& rep, int64_t n, cplx z, int64_t K,
                                     bool smooth) {
    CoefficientSeries series(rep, smooth ? 6 * K : K);
    return reciprocal_L_twist(series, n, z, K, smooth);
}

}  // namespace qtwist
