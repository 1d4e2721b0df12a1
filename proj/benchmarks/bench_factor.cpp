#include <benchmark/benchmark.h>

#include "goodfrey/factor.hpp"

using namespace goodfrey;

namespace {

void BM_TrialSweep(benchmark::State& state) {
    const long limit = state.range(0);
    for (auto _ : state) {
        Int acc = 0;
        for (long n = 2; n <= limit; ++n) acc += static_cast<long>(factor(Int(n)).factors.size());
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * (limit - 1));
}
BENCHMARK(BM_TrialSweep)->Arg(10'000)->Arg(100'000);

void BM_RhoSemiprime(benchmark::State& state) {
    // product of two primes near 10^(digits/2)
    static const Int semiprimes[] = {
        Int("10000000019") * Int("10000000033"),            // 2 x 11 digits
        Int("1000000000039") * Int("1000000000061"),        // 2 x 13 digits
        Int("99999999999973") * Int("100000000000031"),     // 2 x 14/15 digits
    };
    const Int& n = semiprimes[state.range(0)];
    for (auto _ : state) {
        state.PauseTiming();
        FactorCache::instance().clear();  // measure the work, not the cache
        state.ResumeTiming();
        FactoredInteger f = factor(n);
        benchmark::DoNotOptimize(f.complete);
    }
}
BENCHMARK(BM_RhoSemiprime)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_IsPrimeLarge(benchmark::State& state) {
    Int n("170141183460469231731687303715884105727");  // 2^127 - 1
    for (auto _ : state) benchmark::DoNotOptimize(is_prime(n));
}
BENCHMARK(BM_IsPrimeLarge);

void BM_EcmStage(benchmark::State& state) {
    Int n = Int("100000000000000003") * Int("3000000000000000037");
    FactorBudget b = FactorBudget::deep();
    b.rho_iterations = 100'000;
    b.rng_seed = 0x1234;
    for (auto _ : state) {
        state.PauseTiming();
        FactorCache::instance().clear();
        state.ResumeTiming();
        FactoredInteger f = factor(n, b);
        benchmark::DoNotOptimize(f.complete);
    }
}
BENCHMARK(BM_EcmStage)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
