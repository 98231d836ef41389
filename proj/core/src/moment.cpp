#include "qtwist/moment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

#include "qtwist/char_arith.hpp"
#include "qtwist/lfunc.hpp"

namespace qtwist {

namespace {

constexpr int64_t kDefaultPmax = 100000;   // reference prime bound for the main term
constexpr int64_t kResiduePmax = 200000;   // reference prime bound for the residue check

cplx bump_integrand(double t, cplx s) {
    double u = (t - 1.0) * (2.0 - t);
    if (u <= 0.0) return {0.0, 0.0};
    return std::exp(-1.0 / u) * std::exp((s - 1.0) * std::log(t));
}

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                      cplx fb, cplx fm, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cplx flm = f(lm), frm = f(rm);
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, tol / 2.0, depth - 1);
}

}  // namespace

double WeightSpec::value(double t) const {
    if (kind == Kind::gaussian) return t > 0.0 ? std::exp(-t * t) : 0.0;
    double u = (t - 1.0) * (2.0 - t);
    return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
}

cplx mellin_weight(const WeightSpec& weight, cplx s) {
    if (weight.kind == WeightSpec::Kind::gaussian) {
        if (s.real() <= 0.0)
            throw std::domain_error("mellin_weight: gaussian transform needs Re(s) > 0");
        return 0.5 * gamma_fn(s / 2.0);
    }
    auto f = [s](double t) { return bump_integrand(t, s); };
    // integrand and all derivatives vanish at both endpoints
    cplx fa{0.0, 0.0}, fb{0.0, 0.0};
    return adaptive_simpson(f, 1.0, 2.0, fa, fb, f(1.5), 1e-13, 48);
}

EulerProductResult euler_product_P(const SatakeSystem& rep, double z, int64_t pmax) {
    if (z <= 0.5 + 1e-3) throw std::domain_error("euler_product_P: need z > 1/2");
    if (pmax < 1000) throw std::invalid_argument("euler_product_P: need pmax >= 1000");
    if (pmax > rep.prime_bound())
        throw std::invalid_argument("euler_product_P: pmax exceeds the rep's prime bound");
    int kmax = (rep.degree() + 1) / 2;
    double prod = 0.5;
    for (int64_t p : primes_up_to(pmax)) {
        if (p == 2) continue;
        double pd = static_cast<double>(p);
        double inner = 0.0;
        for (int k = 1; k <= kmax; ++k)
            inner += coeff_prime_power(rep, p, 2 * k).real() * std::pow(pd, -2.0 * k * z);
        prod *= 1.0 + (1.0 - 1.0 / pd) * inner;
    }
    // sum_{p > pmax} 2^M p^{-2z} <~ 2^M pmax^{1-2z} / ((2z-1) ln pmax)
    double tail_sum = std::pow(2.0, rep.degree()) *
                      std::pow(static_cast<double>(pmax), 1.0 - 2.0 * z) /
                      ((2.0 * z - 1.0) * std::log(static_cast<double>(pmax)));
    return {prod, std::expm1(tail_sum)};
}

ResidueCheckResult residue_identity_check(const SatakeSystem& rep, double z, int64_t mmax) {
    if (z < 1.0) throw std::invalid_argument("residue_identity_check: need z >= 1");
    if (mmax < 3) throw std::invalid_argument("residue_identity_check: mmax too small");
    if (mmax > rep.prime_bound())
        throw std::invalid_argument("residue_identity_check: mmax exceeds the rep's prime bound");
    auto spf = smallest_prime_factor(mmax);
    // g(m) = a_pi(m^2) prod_{p|m} (1 - 1/p), multiplicative
    std::vector<double> g(static_cast<size_t>(mmax) + 1, 0.0);
    g[1] = 1.0;
    int M = rep.degree();
    KahanSum sum;
    sum.add(1.0);  // m = 1, m^{-2z} = 1
    for (int64_t m = 3; m <= mmax; m += 2) {
        int64_t p = spf[static_cast<size_t>(m)];
        int64_t rest = m;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        double f = 0.0;
        if (2 * e <= M)
            f = coeff_prime_power(rep, p, 2 * e).real() * (1.0 - 1.0 / static_cast<double>(p));
        double gm = g[static_cast<size_t>(rest)] * f;
        g[static_cast<size_t>(m)] = gm;
        if (gm != 0.0) sum.add(gm * std::pow(static_cast<double>(m), -2.0 * z));
    }
    double half_sum = 0.5 * sum.value();
    EulerProductResult ref = euler_product_P(rep, z, std::min(kResiduePmax, rep.prime_bound()));
    // sum tail: sum_{m > mmax} 2^M m^{-2z} <~ 2^M mmax^{1-2z} / (2z-1)
    double sum_tail = std::pow(2.0, M) * std::pow(static_cast<double>(mmax), 1.0 - 2.0 * z) /
                      (2.0 * z - 1.0);
    double tail_est = (0.5 * sum_tail) / ref.value + ref.tail_bound;
    return {std::abs(half_sum / ref.value - 1.0), tail_est, half_sum, ref.value};
}

namespace {

// Shared read-only tables for the twisted sums, laid out over odd k only
// (index j = (k-1)/2) so the per-n sieve stays cache-resident.
struct TwistTables {
    std::vector<int64_t> odd_primes;
    std::vector<uint16_t> pj;   // index into odd_primes of spf(k), k = 2j+1 > 1
    std::vector<uint32_t> dj;   // odd index of k / spf(k)
    std::vector<double> c1;     // a(k) k^{-z} S(k/K), zero beyond keff1
    std::vector<double> c2;     // same at doubled K, out to keff2
    size_t jmax1 = 0, jmax2 = 0;
    size_t np1 = 0, np2 = 0;    // odd primes <= keff1 / keff2
    // square-tail restoration: smoothing suppresses the k = m^2 terms, which
    // do not oscillate in n (chi_n(m^2) = [gcd(m,n)=1]) and would otherwise
    // leave a K-dependent bias in the moment. G[d] = sum over odd multiples
    // m of d of a(m^2) m^{-2z} (1 - S(m^2/K)); the per-n complement is then
    // sum_{d | rad(n)} mu(d) G[d].
    std::vector<double> G1, G2;
    int64_t gmax = 0;
};

struct Factors {
    int64_t p[16];
    bool odd_exp[16];
    int nf = 0;
};

Factors factorize_odd(int64_t n) {
    Factors fs;
    int64_t rest = n;
    for (int64_t f = 3; f * f <= rest; f += 2) {
        if (rest % f != 0) continue;
        int e = 0;
        while (rest % f == 0) {
            rest /= f;
            ++e;
        }
        fs.p[fs.nf] = f;
        fs.odd_exp[fs.nf] = (e & 1) != 0;
        ++fs.nf;
    }
    if (rest > 1) {
        fs.p[fs.nf] = rest;
        fs.odd_exp[fs.nf] = true;
        ++fs.nf;
    }
    return fs;
}

double square_tail(const Factors& fs, const std::vector<double>& G, int64_t gmax) {
    double c = 0.0;
    for (unsigned mask = 0; mask < (1u << fs.nf); ++mask) {
        int64_t d = 1;
        int sign = 1;
        bool over = false;
        for (int i = 0; i < fs.nf; ++i) {
            if (!(mask & (1u << i))) continue;
            d *= fs.p[i];
            sign = -sign;
            if (d > gmax) {
                over = true;
                break;
            }
        }
        if (!over) c += sign * G[static_cast<size_t>(d)];
    }
    return c;
}

struct TwistScratch {
    std::vector<int8_t> chip;   // chi_n at odd_primes[i]
    std::vector<int8_t> val;    // chi_n(2j+1)
    std::vector<int8_t> arena;  // packed per-factor symbol tables
};

// chi_n at every odd prime in tb.odd_primes[0..np), division-free: for each
// prime power f^e || n build the table t_f[a] = (a/f)^e by marking squares
// incrementally, then walk the prime list with running residues mod f.
void chi_at_primes(const Factors& fs, const TwistTables& tb, size_t np, TwistScratch& sc) {
    struct Walk {
        int64_t f;
        int64_t m;        // running residue: current prime mod f
        const int8_t* t;  // symbol table of length f
    };
    Walk walks[16];
    size_t used = 0;
    for (int fi = 0; fi < fs.nf; ++fi) {
        int64_t f = fs.p[fi];
        int8_t* t = sc.arena.data() + used;
        used += static_cast<size_t>(f);
        walks[fi] = {f, 0, t};
        if (fs.odd_exp[fi]) {
            std::fill(t, t + f, int8_t{-1});
            // r^2 mod f by the incremental identity (r+1)^2 = r^2 + 2r + 1
            int64_t sq = 0;
            for (int64_t r = 1; r <= f / 2; ++r) {
                sq += 2 * r - 1;
                if (sq >= f) sq -= f;
                t[sq] = 1;
            }
        } else {
            std::fill(t, t + f, int8_t{1});
        }
        t[0] = 0;
    }
    if (fs.nf == 0) {  // n = 1
        std::fill(sc.chip.begin(), sc.chip.begin() + static_cast<ptrdiff_t>(np), int8_t{1});
        return;
    }
    int64_t prev = 0;
    for (size_t i = 0; i < np; ++i) {
        int64_t gap = tb.odd_primes[i] - prev;
        prev = tb.odd_primes[i];
        int v = 1;
        for (int fi = 0; fi < fs.nf; ++fi) {
            Walk& wk = walks[fi];
            wk.m += gap;
            while (wk.m >= wk.f) wk.m -= wk.f;
            v *= wk.t[wk.m];
        }
        sc.chip[i] = static_cast<int8_t>(v);
    }
}

// s1 = sum_{k odd <= keff1} c1[k] chi_n(k) plus the square-tail complement;
// when sampled also s2, the same at doubled K.
void twisted_sums(int64_t n, const TwistTables& tb, bool sampled, TwistScratch& sc,
                  double& s1_out, double& s2_out) {
    Factors fs = factorize_odd(n);
    chi_at_primes(fs, tb, sampled ? tb.np2 : tb.np1, sc);
    const int8_t* chip = sc.chip.data();
    int8_t* val = sc.val.data();
    const uint16_t* pj = tb.pj.data();
    const uint32_t* dj = tb.dj.data();
    const double* c1 = tb.c1.data();
    const double* c2 = tb.c2.data();
    val[0] = 1;
    double s1 = c1[0], s2 = c2[0];
    if (!sampled) {
        for (size_t j = 1; j <= tb.jmax1; ++j) {
            int8_t v = static_cast<int8_t>(val[dj[j]] * chip[pj[j]]);
            val[j] = v;
            s1 += c1[j] * v;
        }
    } else {
        for (size_t j = 1; j <= tb.jmax1; ++j) {
            int8_t v = static_cast<int8_t>(val[dj[j]] * chip[pj[j]]);
            val[j] = v;
            s1 += c1[j] * v;
            s2 += c2[j] * v;
        }
        for (size_t j = tb.jmax1 + 1; j <= tb.jmax2; ++j) {
            int8_t v = static_cast<int8_t>(val[dj[j]] * chip[pj[j]]);
            val[j] = v;
            s2 += c2[j] * v;
        }
    }
    s1_out = s1 + square_tail(fs, tb.G1, tb.gmax);
    s2_out = sampled ? s2 + square_tail(fs, tb.G2, tb.gmax) : s2;
}

}  // namespace

MomentLhsResult moment_lhs(const SatakeSystem& rep, const MomentConfig& cfg) {
    if (cfg.alpha <= 0.0) throw std::invalid_argument("moment_lhs: need alpha > 0");
    if (cfg.K < 100) throw std::invalid_argument("moment_lhs: need K >= 100");
    if (cfg.X < 0.0) throw std::invalid_argument("moment_lhs: need X >= 0");
    if (cfg.alpha < 0.5 && !cfg.smoothing)
        throw std::invalid_argument("moment_lhs: alpha < 1/2 requires smoothing (extrapolated mode)");
    double z = 0.5 + cfg.alpha;
    int64_t keff1 = cfg.smoothing ? 6 * cfg.K : cfg.K;
    int64_t keff2 = cfg.smoothing ? 12 * cfg.K : 2 * cfg.K;  // K -> 2K subsample pass
    if (keff2 > rep.prime_bound())
        throw std::invalid_argument("moment_lhs: rep prime bound below 2x truncation range");

    CoefficientSeries series(rep, keff2);
    const auto& spf = series.spf();

    TwistTables tb;
    tb.jmax1 = static_cast<size_t>((keff1 - 1) / 2);
    tb.jmax2 = static_cast<size_t>((keff2 - 1) / 2);
    std::vector<uint16_t> prime_index(static_cast<size_t>(keff2) + 1, 0);
    for (int64_t p = 3; p <= keff2; p += 2) {
        if (spf[static_cast<size_t>(p)] != p) continue;
        prime_index[static_cast<size_t>(p)] = static_cast<uint16_t>(tb.odd_primes.size());
        tb.odd_primes.push_back(p);
        if (p <= keff1) tb.np1 = tb.odd_primes.size();
    }
    tb.np2 = tb.odd_primes.size();
    tb.pj.resize(tb.jmax2 + 1, 0);
    tb.dj.resize(tb.jmax2 + 1, 0);
    tb.c1.assign(tb.jmax2 + 1, 0.0);
    tb.c2.assign(tb.jmax2 + 1, 0.0);
    // c[k] = a(k) k^{-z} S(k/K), odd k = 2j+1
    auto weight_at = [&](int64_t k, int64_t K) {
        double a = series.at(k);
        if (a == 0.0) return 0.0;
        double u = static_cast<double>(k) / static_cast<double>(K);
        double w = cfg.smoothing ? std::exp(-u * u) : 1.0;
        return a * std::pow(static_cast<double>(k), -z) * w;
    };
    for (int64_t k = 3; k <= keff2; k += 2) {
        size_t j = static_cast<size_t>((k - 1) / 2);
        int64_t p = spf[static_cast<size_t>(k)];
        tb.pj[j] = prime_index[static_cast<size_t>(p)];
        tb.dj[j] = static_cast<uint32_t>((k / p - 1) / 2);
        if (k <= keff1) tb.c1[j] = weight_at(k, cfg.K);
        tb.c2[j] = weight_at(k, 2 * cfg.K);
    }
    // the k = 1 term carries the same smoothing weight; its complement is
    // restored by the m = 1 entry of the square tail
    tb.c1[0] = weight_at(1, cfg.K);
    tb.c2[0] = weight_at(1, 2 * cfg.K);

    // square-tail tables: a(m^2) for odd m by the same spf sieve, then the
    // complement weights and their divisor sums
    tb.gmax = keff2;
    std::vector<double> asq(static_cast<size_t>(keff2) + 1, 0.0);
    asq[1] = 1.0;
    int M = rep.degree();
    for (int64_t m = 3; m <= keff2; m += 2) {
        int64_t p = spf[static_cast<size_t>(m)];
        int64_t rest = m;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        double f = (2 * e <= M) ? coeff_prime_power(rep, p, 2 * e).real() : 0.0;
        asq[static_cast<size_t>(m)] = asq[static_cast<size_t>(rest)] * f;
    }
    auto complement_weight = [&](int64_t m, int64_t K, int64_t keff) {
        double msq = static_cast<double>(m) * static_cast<double>(m);
        double incl = 0.0;
        if (cfg.smoothing) {
            double u = msq / static_cast<double>(K);
            if (msq <= static_cast<double>(keff)) incl = std::exp(-u * u);
        } else {
            if (msq <= static_cast<double>(keff)) incl = 1.0;
        }
        return 1.0 - incl;
    };
    std::vector<double> gm1(static_cast<size_t>(keff2) + 1, 0.0);
    std::vector<double> gm2(static_cast<size_t>(keff2) + 1, 0.0);
    for (int64_t m = 1; m <= keff2; m += 2) {
        double a = asq[static_cast<size_t>(m)];
        if (a == 0.0) continue;
        double base = a * std::pow(static_cast<double>(m), -2.0 * z);
        gm1[static_cast<size_t>(m)] = base * complement_weight(m, cfg.K, keff1);
        gm2[static_cast<size_t>(m)] = base * complement_weight(m, 2 * cfg.K, keff2);
    }
    tb.G1.assign(static_cast<size_t>(keff2) + 1, 0.0);
    tb.G2.assign(static_cast<size_t>(keff2) + 1, 0.0);
    for (int64_t d = 1; d <= keff2; d += 2) {
        KahanSum a1, a2;
        for (int64_t t = d; t <= keff2; t += 2 * d) {
            a1.add(gm1[static_cast<size_t>(t)]);
            a2.add(gm2[static_cast<size_t>(t)]);
        }
        tb.G1[static_cast<size_t>(d)] = a1.value();
        tb.G2[static_cast<size_t>(d)] = a2.value();
    }

    // support of the n-sum
    int64_t n_lo = 1, n_hi;
    if (cfg.weight.kind == WeightSpec::Kind::gaussian) {
        n_hi = static_cast<int64_t>(std::floor(6.1 * cfg.X));
    } else {
        n_lo = static_cast<int64_t>(std::floor(cfg.X)) + 1;
        n_hi = static_cast<int64_t>(std::ceil(2.0 * cfg.X)) - 1;
    }
    if (n_lo % 2 == 0) ++n_lo;
    if (n_hi < n_lo) {
        std::fprintf(stderr, "moment_lhs: empty weight support (X = %g)\n", cfg.X);
        return {0.0, 0.0, true};
    }
    int64_t count = (n_hi - n_lo) / 2 + 1;
    int64_t chunk = std::max<int64_t>(1, cfg.chunk);
    int64_t nchunks = (count + chunk - 1) / chunk;

    struct ChunkOut {
        double lhs = 0.0;
        double est = 0.0;
    };
    std::vector<ChunkOut> partial(static_cast<size_t>(nchunks));
    std::atomic<int64_t> next{0};
    int workers = std::max(1, cfg.workers);

    auto work = [&]() {
        TwistScratch scratch;
        scratch.chip.assign(tb.odd_primes.size(), 0);
        scratch.val.assign(tb.jmax2 + 1, 0);
        scratch.arena.assign(static_cast<size_t>(n_hi) + 1, 0);
        for (;;) {
            int64_t ci = next.fetch_add(1);
            if (ci >= nchunks) break;
            int64_t i0 = ci * chunk;
            int64_t i1 = std::min(count, i0 + chunk);
            KahanSum acc, est;
            for (int64_t i = i0; i < i1; ++i) {
                int64_t n = n_lo + 2 * i;
                double w = cfg.weight.value(static_cast<double>(n) / cfg.X);
                bool sampled = (i % 100 == 0);
                double s1 = 0.0, s2 = 0.0;
                twisted_sums(n, tb, sampled, scratch, s1, s2);
                acc.add(w * s1);
                if (sampled) est.add(std::abs(w * (s2 - s1)) * 100.0);
            }
            partial[static_cast<size_t>(ci)] = {acc.value(), est.value()};
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // fixed binary reduction tree, independent of worker count
    std::vector<ChunkOut> level = std::move(partial);
    while (level.size() > 1) {
        std::vector<ChunkOut> up((level.size() + 1) / 2);
        for (size_t i = 0; i + 1 < level.size(); i += 2)
            up[i / 2] = {level[i].lhs + level[i + 1].lhs, level[i].est + level[i + 1].est};
        if (level.size() % 2 == 1) up.back() = level.back();
        level = std::move(up);
    }
    return {level[0].lhs, level[0].est, false};
}

double moment_main_term(const SatakeSystem& rep, double alpha, double X,
                        const WeightSpec& weight) {
    double z = 0.5 + alpha;
    double P = euler_product_P(rep, z, std::min(kDefaultPmax, rep.prime_bound())).value;
    double w1 = mellin_weight(weight, cplx{1.0, 0.0}).real();
    return X * w1 * P;
}

MomentReport moment_report(const SatakeSystem& rep, double alpha,
                           const std::vector<double>& X_list, int64_t K,
                           const WeightSpec& weight, int workers) {
    if (X_list.size() < 3)
        throw std::invalid_argument("moment_report: need at least 3 X values");
    for (size_t i = 1; i < X_list.size(); ++i)
        if (X_list[i] <= X_list[i - 1])
            throw std::invalid_argument("moment_report: X_list must be increasing");

    MomentReport rpt;
    rpt.rep_label = rep.label();
    rpt.alpha = alpha;
    rpt.weight = weight.name();
    rpt.K = K;
    rpt.extrapolated = alpha < 0.5;

    for (double X : X_list) {
        MomentConfig cfg;
        cfg.alpha = alpha;
        cfg.X = X;
        cfg.K = K;
        cfg.weight = weight;
        cfg.workers = workers;
        MomentLhsResult r = moment_lhs(rep, cfg);
        double main = moment_main_term(rep, alpha, X, weight);
        rpt.rows.push_back({X, r.lhs, main, r.lhs / main, r.trunc_estimate});
    }

    // least squares: log|lhs - main| vs log X
    size_t m = rpt.rows.size();
    size_t below_noise = 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : rpt.rows) {
        double resid = std::abs(row.lhs - row.main);
        if (resid <= row.trunc_est) ++below_noise;
        double lx = std::log(row.X);
        double ly = std::log(std::max(resid, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = m * sxx - sx * sx;
    rpt.fitted_exponent = (m * sxy - sx * sy) / denom;
    rpt.noise_limited = below_noise * 2 >= m;

    // trend: |ratio - 1| decreasing, allowing one inversion
    size_t inversions = 0;
    for (size_t i = 1; i < m; ++i)
        if (std::abs(rpt.rows[i].ratio - 1.0) > std::abs(rpt.rows[i - 1].ratio - 1.0))
            ++inversions;
    bool trend_ok = inversions <= 1;
    bool exponent_ok = rpt.noise_limited || rpt.fitted_exponent <= 1.0 - 2.0 * alpha + 0.35;
    rpt.pass = trend_ok && exponent_ok;
    return rpt;
}

}  // namespace qtwist
