#include <benchmark/benchmark.h>

#include "krull/cone.hpp"
#include "krull/decay.hpp"
#include "krull/factorization.hpp"
#include "krull/numberfield.hpp"
#include "krull/presets.hpp"
#include "krull/zeta.hpp"

using namespace krull;

namespace {

void BM_HilbertAtomScan(benchmark::State& state) {
    MonoidSpec spec = hilbert_preset(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        auto atoms = atoms_up_to(spec, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(atoms);
    }
}
BENCHMARK(BM_HilbertAtomScan)->Arg(1000)->Arg(4000);

void BM_UfmHfmScan(benchmark::State& state) {
    MonoidSpec spec = hilbert_preset(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        auto report =
            check_ufm_hfm_bounded(spec, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_UfmHfmScan)->Arg(2000);

void BM_CircleExtremeRays(benchmark::State& state) {
    std::vector<std::vector<std::int64_t>> gens;
    for (std::int64_t n = 0; n <= state.range(0); ++n)
        gens.push_back({n * n - 1, 2 * n, n * n + 1});
    for (auto _ : state) {
        auto rays = cone::extreme_rays(gens);
        benchmark::DoNotOptimize(rays);
    }
}
BENCHMARK(BM_CircleExtremeRays)->Arg(6)->Arg(10);

void BM_ClosureHeap(benchmark::State& state) {
    auto pres = naturals_preset(1000);
    auto scale = power_scale(pres, 2);
    for (auto _ : state) {
        auto est =
            zeta_partial_sum(pres, scale, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(est);
    }
}
BENCHMARK(BM_ClosureHeap)->Arg(10000)->Arg(100000);

void BM_DecayHilbert(benchmark::State& state) {
    auto pres = hilbert_preset(10000);
    for (auto _ : state) {
        for (std::uint64_t n = 9945; n <= 9997; n += 4) {
            auto d = decay(pres, MonoidElement::natural(n));
            benchmark::DoNotOptimize(d);
        }
    }
}
BENCHMARK(BM_DecayHilbert);

void BM_IdealCountsOracle(benchmark::State& state) {
    auto field = make_field(-5, 2);
    for (auto _ : state) {
        auto counts =
            ideal_counts_oracle_up_to(field, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(counts);
    }
}
BENCHMARK(BM_IdealCountsOracle)->Arg(10000);

void BM_IdealCountsEnumeration(benchmark::State& state) {
    auto field = make_field(-5, 2);
    for (auto _ : state) {
        auto counts = ideal_counts_by_enumeration(
            field, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(counts);
    }
}
BENCHMARK(BM_IdealCountsEnumeration)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
