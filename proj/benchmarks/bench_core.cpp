#include <benchmark/benchmark.h>

#include <random>

#include "jitdp/classifiers.hpp"
#include "jitdp/effort_eval.hpp"
#include "jitdp/stats.hpp"
#include "jitdp/synthetic.hpp"
#include "jitdp/timewise.hpp"
#include "jitdp/unsupervised.hpp"

namespace {

const jitdp::Dataset& project() {
    static const jitdp::Dataset ds = jitdp::synthetic_project({}, 0);
    return ds;
}

void BM_RankByMetric(benchmark::State& state) {
    const auto slice = project().records().first(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(jitdp::rank_by_metric(slice, jitdp::MetricId::LT));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RankByMetric)->Arg(400)->Arg(4800);

void BM_Evaluate(benchmark::State& state) {
    const auto slice = project().records().first(static_cast<std::size_t>(state.range(0)));
    const auto ranking = jitdp::rank_by_metric(slice, jitdp::MetricId::AGE);
    for (auto _ : state) benchmark::DoNotOptimize(jitdp::evaluate(ranking));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->Arg(400)->Arg(4800);

void BM_WilcoxonExact(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> a(static_cast<std::size_t>(state.range(0))), b(a.size());
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(jitdp::wilcoxon_signed_rank(a, b));
}
BENCHMARK(BM_WilcoxonExact)->Arg(12)->Arg(25)->Arg(200);

void BM_FitClassifier(benchmark::State& state) {
    const auto slice = project().records().first(400);
    const auto kind = static_cast<jitdp::ClassifierKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(jitdp::fit_classifier(kind, slice));
    state.SetLabel(std::string(jitdp::classifier_name(kind)));
}
BENCHMARK(BM_FitClassifier)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
    const auto learners = jitdp::parse_learners(state.range(0) == 0 ? "unsupervised" : "all");
    for (auto _ : state) benchmark::DoNotOptimize(jitdp::run_experiment(project(), learners));
}
BENCHMARK(BM_RunExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
