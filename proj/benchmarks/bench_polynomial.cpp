#include <benchmark/benchmark.h>

#include "goodfrey/curves.hpp"
#include "goodfrey/families.hpp"
#include "goodfrey/polynomial.hpp"
#include "goodfrey/sturm.hpp"

using namespace goodfrey;

namespace {

void BM_MapTableValidation(benchmark::State& state) {
    // full symbolic rebuild + identity verification of one family table
    for (auto _ : state) {
        MapIdentityReport rep = verify_map_identities(TorsionFamily::c2x8);
        benchmark::DoNotOptimize(rep.bezout_identity);
    }
}
BENCHMARK(BM_MapTableValidation)->Unit(benchmark::kMillisecond);

void BM_MultiPolyPow(benchmark::State& state) {
    const MultiPoly base = table(TorsionFamily::c2x8).B;
    const unsigned e = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(base.pow(e).term_count());
}
BENCHMARK(BM_MultiPolyPow)->Arg(2)->Arg(4)->Arg(8);

void BM_Evaluate(benchmark::State& state) {
    const MultiPoly& p = table(TorsionFamily::c2x8).B;
    std::array<Int, 4> point{Int("123456789123456789"), Int("987654321987654321"), Int(0),
                             Int(0)};
    for (auto _ : state) benchmark::DoNotOptimize(p.evaluate(point));
}
BENCHMARK(BM_Evaluate);

void BM_SturmCertificate(benchmark::State& state) {
    // the degree-48 positivity target c4(1,t)^3 - D(1,t)^6 for C2xC8
    std::array<std::optional<Rat>, 4> fix_a;
    fix_a[0] = Rat(1);
    UniPoly c4t = c4_table_poly(TorsionFamily::c2x8).specialize(fix_a, Var::b);
    UniPoly d = table(TorsionFamily::c2x8).D.specialize(fix_a, Var::b);
    UniPoly target = c4t.pow(3) - d.pow(6);
    Rat theta = table(TorsionFamily::c2x8).theta_tabulated;
    for (auto _ : state) benchmark::DoNotOptimize(certify_positive_on(target, theta).certified);
}
BENCHMARK(BM_SturmCertificate)->Unit(benchmark::kMillisecond);

void BM_GreatestRoot(benchmark::State& state) {
    const UniPoly& f = table(TorsionFamily::c2x8).f_num;
    Rat eps(1, 10'000'000);
    for (auto _ : state) benchmark::DoNotOptimize(greatest_real_root(f, eps).lo);
}
BENCHMARK(BM_GreatestRoot);

}  // namespace

BENCHMARK_MAIN();
