#include "qtwist/rep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtwist {

RamanujanTauTable::RamanujanTauTable(int64_t bound) : bound_(bound) {
    if (bound < 1) throw std::invalid_argument("RamanujanTauTable: need bound >= 1");
    size_t len = static_cast<size_t>(bound);

    // eta^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}   (Jacobi)
    std::vector<std::pair<int64_t, int64_t>> eta3;
    for (int64_t m = 0; m * (m + 1) / 2 < bound; ++m)
        eta3.emplace_back(m * (m + 1) / 2, (m & 1) ? -(2 * m + 1) : (2 * m + 1));

    // eta^24 = (eta^3)^8 by seven sparse convolutions
    coeff_.assign(len, 0);
    for (auto [e, c] : eta3) coeff_[static_cast<size_t>(e)] = c;
    std::vector<int128> next(len);
    for (int pass = 0; pass < 7; ++pass) {
        std::fill(next.begin(), next.end(), int128{0});
        for (auto [e, c] : eta3) {
            int128 cc = c;
            size_t limit = len - static_cast<size_t>(e);
            for (size_t i = 0; i < limit; ++i)
                if (coeff_[i] != 0) next[i + static_cast<size_t>(e)] += cc * coeff_[i];
        }
        coeff_.swap(next);
    }
}

int128 RamanujanTauTable::operator()(int64_t n) const {
    if (n < 1 || n > bound_)
        throw std::out_of_range("RamanujanTauTable: n beyond precomputation bound");
    return coeff_[static_cast<size_t>(n - 1)];
}

std::pair<cplx, cplx> satake_from_hecke_eigenvalue(double lambda_p) {
    if (std::abs(lambda_p) > 2.0)
        throw std::domain_error("satake_from_hecke_eigenvalue: |lambda| > 2 is non-unitary");
    double half = lambda_p / 2.0;
    double im = std::sqrt(std::max(0.0, 1.0 - half * half));
    return {cplx{half, im}, cplx{half, -im}};
}

SatakeSystem SatakeSystem::delta(int64_t prime_bound) {
    SatakeSystem rep;
    rep.degree_ = 2;
    rep.label_ = "delta";
    rep.delta_sign_ = -1;
    rep.prime_bound_ = prime_bound;
    RamanujanTauTable tau(prime_bound);
    for (int64_t p : primes_up_to(prime_bound)) {
        double lambda = static_cast<double>(tau(p)) / std::pow(static_cast<double>(p), 5.5);
        auto [a, b] = satake_from_hecke_eigenvalue(lambda);
        rep.params_.emplace(p, std::vector<cplx>{a, b});
    }
    return rep;
}

SatakeSystem SatakeSystem::unitary2(int64_t prime_bound) {
    SatakeSystem rep;
    rep.degree_ = 2;
    rep.label_ = "unitary2";
    rep.delta_sign_ = -1;
    rep.prime_bound_ = prime_bound;
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int64_t p : primes_up_to(prime_bound)) {
        double frac = std::fmod(static_cast<double>(p) * phi, 1.0);
        double theta = 2.0 * std::numbers::pi * frac;
        cplx a{std::cos(theta), std::sin(theta)};
        rep.params_.emplace(p, std::vector<cplx>{a, std::conj(a)});
    }
    return rep;
}

SatakeSystem SatakeSystem::custom(std::string label, int degree,
                                  std::map<int64_t, std::vector<cplx>> params,
                                  int delta_sign) {
    if (degree < 1) throw std::invalid_argument("SatakeSystem: need degree >= 1");
    SatakeSystem rep;
    rep.degree_ = degree;
    rep.label_ = std::move(label);
    rep.delta_sign_ = delta_sign;
    for (auto& [p, v] : params) {
        if (static_cast<int>(v.size()) != degree)
            throw std::invalid_argument("SatakeSystem: parameter list size != degree");
        for (const cplx& a : v)
            if (std::abs(a) > 1.0 + 1e-12)
                throw std::domain_error("SatakeSystem: |alpha| > 1 violates unitarity");
        rep.prime_bound_ = std::max(rep.prime_bound_, p);
        rep.params_.emplace(p, v);
    }
    return rep;
}

const std::vector<cplx>& SatakeSystem::satake(int64_t p) const {
    auto it = params_.find(p);
    if (it == params_.end())
        throw std::out_of_range("SatakeSystem: no Satake data at this prime");
    return it->second;
}

cplx coeff_prime_power(const SatakeSystem& rep, int64_t p, int k) {
    if (k < 0) throw std::invalid_argument("coeff_prime_power: need k >= 0");
    if (k == 0) return 1.0;
    if (k > rep.degree()) return 0.0;
    const auto& alphas = rep.satake(p);
    // coefficients of prod_j (1 - alpha_j x)
    std::vector<cplx> poly(static_cast<size_t>(rep.degree()) + 1, 0.0);
    poly[0] = 1.0;
    size_t used = 0;
    for (const cplx& a : alphas) {
        ++used;
        for (size_t i = used; i >= 1; --i) poly[i] -= a * poly[i - 1];
    }
    return poly[static_cast<size_t>(k)];
}

cplx hecke_coeff_prime_power(const SatakeSystem& rep, int64_t p, int k) {
    if (k < 0) throw std::invalid_argument("hecke_coeff_prime_power: need k >= 0");
    const auto& alphas = rep.satake(p);
    // h_k by variable-at-a-time DP: after including alpha, H[j] += alpha^t H[j-t]
    std::vector<cplx> h(static_cast<size_t>(k) + 1, 0.0);
    h[0] = 1.0;
    for (const cplx& a : alphas) {
        for (int j = 1; j <= k; ++j) h[static_cast<size_t>(j)] += a * h[static_cast<size_t>(j - 1)];
    }
    return h[static_cast<size_t>(k)];
}

double coeff(const SatakeSystem& rep, int64_t n) {
    if (n < 1) throw std::invalid_argument("coeff: need n >= 1");
    cplx prod = 1.0;
    int64_t rest = n;
    for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        prod *= coeff_prime_power(rep, p, e);
        if (prod == cplx{0.0, 0.0}) return 0.0;
    }
    if (rest > 1) prod *= coeff_prime_power(rep, rest, 1);
    return prod.real();
}

CoefficientSeries::CoefficientSeries(const SatakeSystem& rep, int64_t bound) : bound_(bound) {
    if (bound < 1) throw std::invalid_argument("CoefficientSeries: need bound >= 1");
    if (bound > rep.prime_bound())
        throw std::invalid_argument("CoefficientSeries: bound exceeds the rep's prime bound");
    spf_ = smallest_prime_factor(bound);
    table_.assign(static_cast<size_t>(bound) + 1, 0.0);
    table_[1] = 1.0;

    // a_pi(p^e) for every prime p <= bound, e <= M
    int M = rep.degree();
    std::vector<double> ape(static_cast<size_t>(bound + 1) * static_cast<size_t>(M), 0.0);
    for (int64_t p = 2; p <= bound; ++p) {
        if (spf_[static_cast<size_t>(p)] != p) continue;
        for (int e = 1; e <= M; ++e)
            ape[static_cast<size_t>(p - 1) * M + (e - 1)] =
                coeff_prime_power(rep, p, e).real();
    }
    for (int64_t k = 2; k <= bound; ++k) {
        int64_t p = spf_[static_cast<size_t>(k)];
        int64_t rest = k;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        double f = (e <= M) ? ape[static_cast<size_t>(p - 1) * M + (e - 1)] : 0.0;
        table_[static_cast<size_t>(k)] = table_[static_cast<size_t>(rest)] * f;
    }
}

}  // namespace qtwist
