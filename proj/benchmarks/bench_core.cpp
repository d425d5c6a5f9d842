#include "dpl/classify.hpp"
#include "dpl/etale.hpp"
#include "dpl/geom.hpp"
#include "dpl/lattice.hpp"
#include "dpl/picard.hpp"

#include <benchmark/benchmark.h>

using namespace dpl;

static void BM_EnumerateLines(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto lc = picard::enumerate_lines(d);
        benchmark::DoNotOptimize(lc);
    }
}
BENCHMARK(BM_EnumerateLines)->Arg(3)->Arg(2)->Arg(1);

static void BM_WeylGroup(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    auto lc = picard::enumerate_lines(d);
    for (auto _ : state) {
        auto w = picard::weyl_group(d, lc);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_WeylGroup)->Arg(3)->Arg(2)->Arg(1);

static void BM_SubgroupClasses(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    auto w = picard::weyl_group(d);
    for (auto _ : state) {
        auto cls = subgroup_classes(w, {});
        benchmark::DoNotOptimize(cls);
    }
}
BENCHMARK(BM_SubgroupClasses)->Arg(5)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_PairOrbits(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = picard::verify_pair_orbits(2);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_PairOrbits)->Unit(benchmark::kMillisecond);

static void BM_QpSoluble(benchmark::State& state) {
    Poly f(std::vector<Int>{-101, 0, 0, 0, 0, 1});
    for (auto _ : state) {
        auto v = etale::qp_soluble(f, 5);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_QpSoluble);

static void BM_CountLines(benchmark::State& state) {
    // Fermat cubic: good reduction away from 3
    geom::Form surf(4, 3);
    surf.coeff({3, 0, 0, 0}) = 1;
    surf.coeff({0, 3, 0, 0}) = 1;
    surf.coeff({0, 0, 3, 0}) = 1;
    surf.coeff({0, 0, 0, 3}) = 1;
    uint64_t p = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        auto n = geom::count_lines_mod_p(surf, p);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_CountLines)->Arg(7)->Arg(103)->Arg(199)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
