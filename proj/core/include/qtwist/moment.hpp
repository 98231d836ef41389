#ifndef QTWIST_MOMENT_HPP
#define QTWIST_MOMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qtwist/numeric.hpp"
#include "qtwist/rep.hpp"

namespace qtwist {

/// Smoothing weight w: Gaussian exp(-t^2) on t > 0, or the compact bump
/// exp(-1/((t-1)(2-t))) supported on (1, 2).
struct WeightSpec {
    enum class Kind { gaussian, bump };
    Kind kind = Kind::gaussian;

    double value(double t) const;
    /// Largest n/X with nonnegligible weight (gaussian: 6.1; bump: 2).
    double support_upper() const { return kind == Kind::gaussian ? 6.1 : 2.0; }
    double support_lower() const { return kind == Kind::gaussian ? 0.0 : 1.0; }
    const char* name() const { return kind == Kind::gaussian ? "gaussian" : "bump"; }
};

/// Mellin transform of the weight: closed form Gamma(s/2)/2 for the
/// gaussian (Re(s) > 0), adaptive quadrature for the bump.
cplx mellin_weight(const WeightSpec& weight, cplx s);

struct EulerProductResult {
    double value;
    double tail_bound;
};

/// P(z; pi) = (1/2) prod_{p>2, p<=pmax} (1 + (1-1/p) sum_k a_pi(p^{2k}) p^{-2kz}),
/// inner sum through k = ceil(M/2). Requires z > 1/2.
EulerProductResult euler_product_P(const SatakeSystem& rep, double z, int64_t pmax);

struct ResidueCheckResult {
    double deviation;      // |sum / P - 1|
    double tail_estimate;  // analytic estimate of the truncation error
    double sum_value;      // (1/2) sum_{m odd <= mmax} a(m^2) m^{-2z} prod_{p|m}(1-1/p)
    double product_value;  // reference P(z; pi)
};

ResidueCheckResult residue_identity_check(const SatakeSystem& rep, double z, int64_t mmax);

struct MomentConfig {
    double alpha = 0.5;
    double X = 1e4;
    int64_t K = 10000;
    WeightSpec weight;
    bool smoothing = true;
    int workers = 1;
    int64_t chunk = 4096;  // odd-n indices per parallel chunk
};

struct MomentLhsResult {
    double lhs;
    double trunc_estimate;  // K -> 2K doubling measured on a 1% subsample
    bool empty_support = false;
};

/// LHS of the moment experiment: sum over odd n in the weight support of
/// reciprocal_L_twist(rep, n, 1/2 + alpha, K) * w(n/X). Chunked
/// fixed-binary-tree reduction; bit-stable for any worker count.
MomentLhsResult moment_lhs(const SatakeSystem& rep, const MomentConfig& config);

struct MomentRow {
    double X;
    double lhs;
    double main;
    double ratio;
    double trunc_est;
};

struct MomentReport {
    std::string rep_label;
    double alpha;
    std::string weight;
    int64_t K;
    bool extrapolated = false;  // alpha < 1/2: conditionally convergent regime
    std::vector<MomentRow> rows;
    double fitted_exponent = 0.0;
    bool noise_limited = false;
    bool pass = false;
};

/// Sweep over X_list (increasing, length >= 3): ratio table, least-squares
/// fit of log|lhs - main| vs log X, and the trend/exponent pass flag.
MomentReport moment_report(const SatakeSystem& rep, double alpha,
                           const std::vector<double>& X_list, int64_t K,
                           const WeightSpec& weight, int workers);

/// Main term X w^(1) P(1/2 + alpha; pi) with the default reference Pmax.
double moment_main_term(const SatakeSystem& rep, double alpha, double X,
                        const WeightSpec& weight);

}  // namespace qtwist

#endif
