#include <benchmark/benchmark.h>

#include "crgauss/calculus.hpp"
#include "crgauss/harness.hpp"
#include "crgauss/normalization.hpp"
#include "crgauss/rank.hpp"

using namespace crgauss;

namespace {

CRMap whitney(int n) {
    CatalogParams p;
    p.n = n;
    return catalog("whitney", p);
}

HPoint base_point(int n) {
    HPoint p;
    for (int j = 0; j < n - 1; ++j) p.z.emplace_back(mpq_class(j + 1, 3), mpq_class(-1, 5));
    p.u = mpq_class(2, 7);
    return p;
}

void BM_CrValidity(benchmark::State& st) {
    const CRMap F = whitney(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(cr_validity(F));
}
BENCHMARK(BM_CrValidity)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_JetAt(benchmark::State& st) {
    const CRMap F = whitney(3);
    const HPoint p = base_point(3);
    const int order = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(jet_at(F, p, order));
}
BENCHMARK(BM_JetAt)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_NormalizeAt(benchmark::State& st) {
    const CRMap F = whitney(3);
    const HPoint p = base_point(3);
    const PipelineConfig cfg{static_cast<int>(st.range(0)), 6, false};
    for (auto _ : st) benchmark::DoNotOptimize(normalize_at(F, p, cfg));
}
BENCHMARK(BM_NormalizeAt)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_GaussJacobianRank(benchmark::State& st) {
    const CRMap F = whitney(static_cast<int>(st.range(0)));
    const GaussEvaluator ev(F);
    const HPoint p = base_point(F.n());
    for (auto _ : st) benchmark::DoNotOptimize(exact_rank(gauss_jacobian(*ev.at(p))));
}
BENCHMARK(BM_GaussJacobianRank)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DegeneracyDims(benchmark::State& st) {
    const CRMap F = whitney(3);
    const HPoint p = base_point(3);
    for (auto _ : st) benchmark::DoNotOptimize(degeneracy_dims(F, p, 3));
}
BENCHMARK(BM_DegeneracyDims)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& st) {
    const CRMap F = whitney(3);
    AnalysisConfig cfg;
    cfg.samples = 4;
    for (auto _ : st) benchmark::DoNotOptimize(analyze(F, cfg));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
