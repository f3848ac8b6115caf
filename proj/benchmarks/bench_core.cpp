#include <benchmark/benchmark.h>

#include <numeric>

#include "palfkit/chains.hpp"
#include "palfkit/mcg.hpp"
#include "palfkit/palf.hpp"
#include "palfkit/relations.hpp"

using namespace palfkit;

static void BM_HjExpandSweep(benchmark::State& state) {
    long limit = state.range(0);
    for (auto _ : state) {
        long count = 0;
        for (long n = 2; n <= limit; ++n)
            for (long q = 1; q < n; ++q) {
                if (std::gcd(n, q) != 1) continue;
                auto chain = chains::hj_expand(Rational(n, q));
                benchmark::DoNotOptimize(chain);
                ++count;
            }
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_HjExpandSweep)->Arg(50)->Arg(200);

static void BM_EnumerateZBounded(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) {
        auto out = chains::enumerate_Z_bounded(n, 1);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_EnumerateZBounded)->Arg(12)->Arg(24)->Arg(30);

static void BM_LanternEqual(benchmark::State& state) {
    mcg::Page p{0, 3};
    std::vector<mcg::Curve> lhs{mcg::Curve::round(1, 1), mcg::Curve::round(2, 2),
                                mcg::Curve::round(3, 3), mcg::Curve::round(1, 3)};
    std::vector<mcg::Curve> rhs{mcg::Curve::round(1, 2), mcg::Curve::conjugated({2}, 1, 2),
                                mcg::Curve::round(2, 3)};
    for (auto _ : state) {
        bool eq = mcg::mc_equal(p, lhs, rhs);
        benchmark::DoNotOptimize(eq);
    }
}
BENCHMARK(BM_LanternEqual);

static void BM_RbdRelation(benchmark::State& state) {
    for (auto _ : state) {
        auto cert = relations::rbd_relation({2, 5, 3});
        benchmark::DoNotOptimize(cert);
    }
}
BENCHMARK(BM_RbdRelation);

static void BM_GayMark(benchmark::State& state) {
    auto g = plumbing::build_dihedral(19, 4);
    for (auto _ : state) {
        auto pd = palf::gay_mark_palf(g);
        benchmark::DoNotOptimize(pd);
    }
}
BENCHMARK(BM_GayMark);

BENCHMARK_MAIN();
