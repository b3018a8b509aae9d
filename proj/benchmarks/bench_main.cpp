#include <benchmark/benchmark.h>

#include "loewy/io.hpp"

using namespace loewy;

namespace {

LabelMap b2_labels(const AlcoveGeometry& g) { return io::load_label_map(LOEWY_BENCH_FIXTURES, "B2", 5, g).labels; }

// Cold canonical basis for the first n dominant alcoves.
void BM_KLCanonical(benchmark::State& state) {
    AlcoveGeometry g(RootDatum::build(state.range(0) == 0 ? "B2" : "A2"), 5);
    auto alcoves = g.enumerate_dominant(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        KLEngine kl(g);
        for (auto& a : alcoves) benchmark::DoNotOptimize(kl.canonical(HeckeModule::antispherical, a).size());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(alcoves.size()));
}
BENCHMARK(BM_KLCanonical)->Args({0, 40})->Args({0, 120})->Args({1, 120})->Unit(benchmark::kMillisecond);

void BM_NaiveCanonical(benchmark::State& state) {
    AlcoveGeometry g(RootDatum::build("B2"), 5);
    auto alcoves = g.enumerate_dominant(12);
    for (auto _ : state)
        for (auto& a : alcoves) benchmark::DoNotOptimize(naive_canonical(g, HeckeModule::antispherical, a).size());
}
BENCHMARK(BM_NaiveCanonical)->Unit(benchmark::kMillisecond);

void BM_SocleSeries(benchmark::State& state) {
    AlcoveGeometry g(RootDatum::build("B2"), 5);
    LabelMap labels = b2_labels(g);
    auto alcoves = g.enumerate_dominant_up_to(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        KLEngine kl(g);
        LoewySolver s(kl, labels);
        for (auto& a : alcoves) benchmark::DoNotOptimize(s.weyl_socle_series(a).determined());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(alcoves.size()));
}
BENCHMARK(BM_SocleSeries)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SL3Table(benchmark::State& state) {
    int p = static_cast<int>(state.range(0));
    AlcoveGeometry g(RootDatum::build("A2"), p);
    io::LabelMapFile lm = io::load_label_map(LOEWY_BENCH_FIXTURES, "A2", p, g, true);
    for (auto _ : state) {
        SL3Modular m(make_modular_params(p, lm.labels, lm.ignored));
        benchmark::DoNotOptimize(m.table().loewy_length());
    }
}
BENCHMARK(BM_SL3Table)->Arg(3)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_CorpusVerify(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(io::verify_corpus(LOEWY_BENCH_FIXTURES).size());
}
BENCHMARK(BM_CorpusVerify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
