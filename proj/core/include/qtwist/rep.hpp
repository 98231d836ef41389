#ifndef QTWIST_REP_HPP
#define QTWIST_REP_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qtwist/numeric.hpp"

namespace qtwist {

/// Exact Ramanujan tau(n) for n up to a configured bound, computed once from
/// the q-expansion of eta^24 = (eta^3)^8 with eta^3 given by Jacobi's sparse
/// series. Coefficients are exact 128-bit integers.
class RamanujanTauTable {
  public:
    explicit RamanujanTauTable(int64_t bound);
    int64_t bound() const { return bound_; }
    int128 operator()(int64_t n) const;

  private:
    int64_t bound_;
    std::vector<int128> coeff_;  // coeff_[i] = tau(i + 1)
};

/// Unitary Satake parameters {alpha_pi(p, j)} of a degree-M self-dual
/// representation, stored per prime up to a declared bound.
class SatakeSystem {
  public:
    /// Normalized Ramanujan Delta: M = 2, alpha + beta = tau(p)/p^{11/2}.
    static SatakeSystem delta(int64_t prime_bound);
    /// Synthetic self-dual instance: M = 2, alpha(p) = exp(2 pi i frac(p phi)).
    static SatakeSystem unitary2(int64_t prime_bound);
    static SatakeSystem custom(std::string label, int degree,
                               std::map<int64_t, std::vector<cplx>> params,
                               int delta_sign = -1);

    int degree() const { return degree_; }
    const std::string& label() const { return label_; }
    int delta_sign() const { return delta_sign_; }
    int64_t prime_bound() const { return prime_bound_; }
    bool has_prime(int64_t p) const { return params_.count(p) != 0; }
    const std::vector<cplx>& satake(int64_t p) const;

  private:
    int degree_ = 0;
    std::string label_;
    int delta_sign_ = -1;
    int64_t prime_bound_ = 0;
    std::unordered_map<int64_t, std::vector<cplx>> params_;
};

/// Roots of x^2 - lambda x + 1; throws if |lambda| > 2 (non-unitary).
std::pair<cplx, cplx> satake_from_hecke_eigenvalue(double lambda_p);

/// a_pi(p^k): coefficient of x^k in prod_j (1 - alpha_pi(p,j) x);
/// zero for k > M. Real for conjugation-closed parameter multisets.
cplx coeff_prime_power(const SatakeSystem& rep, int64_t p, int k);

/// lambda_pi(p^k): complete homogeneous symmetric polynomial h_k of the
/// Satake parameters (forward L-series coefficients).
cplx hecke_coeff_prime_power(const SatakeSystem& rep, int64_t p, int k);

/// a_pi(n) by multiplicativity over the trial-division factorization of n.
double coeff(const SatakeSystem& rep, int64_t n);

/// Dense table of a_pi(k) for 1 <= k <= bound, built by a smallest-prime-
/// factor sieve. Read-only after construction.
class CoefficientSeries {
  public:
    CoefficientSeries(const SatakeSystem& rep, int64_t bound);
    int64_t bound() const { return bound_; }
    double at(int64_t k) const { return table_[static_cast<size_t>(k)]; }
    const std::vector<double>& table() const { return table_; }
    const std::vector<int32_t>& spf() const { return spf_; }

  private:
    int64_t bound_;
    std::vector<double> table_;
    std::vector<int32_t> spf_;
};

}  // namespace qtwist

#endif
