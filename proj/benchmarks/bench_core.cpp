#include <benchmark/benchmark.h>

#include <complex>

#include "qtwist/char_arith.hpp"
#include "qtwist/gauss.hpp"
#include "qtwist/lfunc.hpp"
#include "qtwist/moment.hpp"
#include "qtwist/rep.hpp"

using namespace qtwist;

static void BM_JacobiSymbol(benchmark::State& state) {
    int64_t m = 1, n = 10001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi_symbol(m, n));
        m += 2;
        if (m >= n) m = 1;
    }
}
BENCHMARK(BM_JacobiSymbol);

static void BM_TauDirect(benchmark::State& state) {
    auto chi = QuadraticCharacterHandle::jacobi(315);
    int64_t q = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tau_direct(chi, q));
        q = q % 313 + 1;
    }
}
BENCHMARK(BM_TauDirect);

static void BM_GaussClosed(benchmark::State& state) {
    int64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g_closed(n, 12));
        n += 2;
        if (n > 9999) n = 1;
    }
}
BENCHMARK(BM_GaussClosed);

static void BM_RamanujanTauTable(benchmark::State& state) {
    int64_t bound = state.range(0);
    for (auto _ : state) {
        RamanujanTauTable tau(bound);
        benchmark::DoNotOptimize(tau(bound));
    }
    state.SetComplexityN(bound);
}
BENCHMARK(BM_RamanujanTauTable)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_CoefficientSeries(benchmark::State& state) {
    int64_t bound = state.range(0);
    SatakeSystem rep = SatakeSystem::delta(bound);
    for (auto _ : state) {
        CoefficientSeries series(rep, bound);
        benchmark::DoNotOptimize(series.at(bound));
    }
}
BENCHMARK(BM_CoefficientSeries)->Arg(10000)->Arg(100000);

static void BM_HurwitzZeta(benchmark::State& state) {
    cplx s{0.5, 2.7};
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hurwitz_zeta(s, x));
        x += 0.05;
        if (x > 1.0) x = 0.1;
    }
}
BENCHMARK(BM_HurwitzZeta);

static void BM_ReciprocalTwist(benchmark::State& state) {
    int64_t K = state.range(0);
    SatakeSystem rep = SatakeSystem::delta(12 * K);
    CoefficientSeries series(rep, 12 * K);
    int64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reciprocal_L_twist(series, n, cplx{1.0, 0.0}, K, true));
        n += 2;
        if (n > 2001) n = 1;
    }
}
BENCHMARK(BM_ReciprocalTwist)->Arg(1000)->Arg(10000);

static void BM_MomentLhs(benchmark::State& state) {
    int64_t K = 2000;
    SatakeSystem rep = SatakeSystem::delta(100000);
    MomentConfig cfg;
    cfg.alpha = 1.0;
    cfg.X = static_cast<double>(state.range(0));
    cfg.K = K;
    cfg.workers = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment_lhs(rep, cfg));
    }
}
BENCHMARK(BM_MomentLhs)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
