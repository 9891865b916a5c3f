#include <benchmark/benchmark.h>

#include "avgctrl/generator.hpp"
#include "avgctrl/oracle.hpp"
#include "avgctrl/verification.hpp"

using namespace avgctrl;

namespace {

SparsityPattern running_example() {
    return validate_pattern(9, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {4, 6}, {6, 2},
                                {6, 8}, {3, 5}, {5, 3}, {5, 7}, {7, 7}, {7, 3},
                                {7, 9}});
}

void bm_decide(benchmark::State& state) {
    SparsityPattern g = running_example();
    for (auto _ : state)
        benchmark::DoNotOptimize(decide_structural_avg_ctrl(g));
}
BENCHMARK(bm_decide);

void bm_certify(benchmark::State& state) {
    SparsityPattern g = running_example();
    auto [rg0, trace] = reduce(g, decide_structural_avg_ctrl(g));
    ReducedGraph rg = apply_labeling(rg0, canonical_relabel(rg0));
    EdgeWeighting w = build_nu(rg);
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_rank(rg, w));
}
BENCHMARK(bm_certify);

void bm_oracle_rank(benchmark::State& state) {
    PolynomialEnsemble pe = oracle_sample(running_example(), 2, 42);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_rank(pe, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_oracle_rank)->Arg(18)->Arg(36);

void bm_reduce_random(benchmark::State& state) {
    SparsityPattern g = generate_pattern(static_cast<int>(state.range(0)), true, 7);
    DecisionReport d = decide_structural_avg_ctrl(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce(g, d));
}
BENCHMARK(bm_reduce_random)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
