#include <benchmark/benchmark.h>

#include "rdg/analysis.hpp"
#include "rdg/cci.hpp"
#include "rdg/generators.hpp"

using namespace rdg;

namespace {

TypeDistribution uniform_weights() { return validate_distribution({1, 1, 1}, true); }

CCIInputs reference_inputs(double mu) {
    CCIInputs inputs;
    inputs.mu = mu;
    inputs.type_dist = validate_distribution({0.1, 0.15, 0.25, 0.5});
    inputs.colour_pmf = Matrix(3, 2, {0.2, 0.2, 0.0, 0.1, 0.5, 0.0});
    inputs.out_indicator = IntMatrix(4, 3, {0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0});
    inputs.in_indicator = IntMatrix(4, 2, {1, 0, 0, 1, 1, 1, 0, 1});
    return validate_cci_inputs(std::move(inputs));
}

void BM_GenerateIrdNaive(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    const TypeDistribution weights = uniform_weights();
    const Kernel kernel = make_chung_lu_kernel(weights);
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_ird(n, weights, kernel, GenSeed{seed++}));
    state.SetComplexityN(n);
}
BENCHMARK(BM_GenerateIrdNaive)->Range(1000, 8000)->Complexity(benchmark::oNSquared);

void BM_GenerateIrdFast(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    const TypeDistribution weights = uniform_weights();
    const Kernel kernel = make_chung_lu_kernel(weights);
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_ird_fast(n, weights, kernel, 0.4, GenSeed{seed++}));
    state.SetComplexityN(n);
}
BENCHMARK(BM_GenerateIrdFast)->Range(10000, 400000)->Complexity(benchmark::oN);

void BM_GenerateCci(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    const CCIInputs inputs = reference_inputs(2.0);
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_cci(n, inputs, GenSeed{seed++}));
}
BENCHMARK(BM_GenerateCci)->Range(1000, 64000);

void BM_TarjanScc(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    const TypedDigraph graph =
        generate_ird_fast(n, uniform_weights(), make_chung_lu_kernel(uniform_weights()), 0.4,
                          GenSeed{7});
    for (auto _ : state)
        benchmark::DoNotOptimize(tarjan_scc(graph));
}
BENCHMARK(BM_TarjanScc)->Range(10000, 160000);

void BM_SamplePairs(benchmark::State& state) {
    const PairPool pool = make_pair_pool(100000, 100000, true);
    const auto m = static_cast<std::int64_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_pairs_without_replacement(pool, m, GenSeed{seed++}));
}
BENCHMARK(BM_SamplePairs)->Range(1000, 1000000);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv))
        return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
