#include <benchmark/benchmark.h>

#include "goodfrey/pipeline.hpp"
#include "goodfrey/torsion.hpp"

using namespace goodfrey;

namespace {

void BM_PointCount(benchmark::State& state) {
    WeierstrassModel m = frey_model(Int(56751904), Int(187388721));
    const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_points_mod_p(m, p));
    state.SetItemsProcessed(state.iterations() * p);
}
BENCHMARK(BM_PointCount)->Arg(10007)->Arg(99991);

void BM_CertifyTorsion(benchmark::State& state) {
    for (auto _ : state) {
        TorsionReport rep = certify_torsion(TorsionFamily::c2x6, Int(432), Int(299693));
        benchmark::DoNotOptimize(rep.certified);
    }
}
BENCHMARK(BM_CertifyTorsion)->Unit(benchmark::kMillisecond);

void BM_PipelineDepth2(benchmark::State& state) {
    for (auto _ : state) {
        state.PauseTiming();
        FactorCache::instance().clear();
        state.ResumeTiming();
        PipelineResult res = run_pipeline(TorsionFamily::c2x8, Int(4), Int(121), 2);
        benchmark::DoNotOptimize(res.rows.size());
    }
}
BENCHMARK(BM_PipelineDepth2)->Unit(benchmark::kMillisecond);

void BM_VerifyCov(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_cov(TorsionFamily::c2x8, Int(4), Int(121)));
}
BENCHMARK(BM_VerifyCov);

}  // namespace

BENCHMARK_MAIN();
