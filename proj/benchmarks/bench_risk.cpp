#include <benchmark/benchmark.h>

#include "intrisk/duality.hpp"
#include "intrisk/intrinsic.hpp"
#include "intrisk/monetary.hpp"
#include "intrisk/properties.hpp"

using namespace intrisk;

namespace {

props::Instance make_instance(props::SetFamily family, int scenarios) {
    props::Rng rng(12345);
    props::InstanceOptions options;
    options.min_scenarios = scenarios;
    options.max_scenarios = scenarios;
    options.force_unacceptable = true;
    return props::random_instance(rng, family, options);
}

void BM_IntrinsicBisectionVar(benchmark::State& state) {
    const props::Instance inst = make_instance(props::SetFamily::var, int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(intrinsic_risk(inst.set, inst.asset, inst.position).value);
    }
}
BENCHMARK(BM_IntrinsicBisectionVar)->Arg(4)->Arg(8)->Arg(12);

void BM_IntrinsicBisectionEs(benchmark::State& state) {
    const props::Instance inst = make_instance(props::SetFamily::es, int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(intrinsic_risk(inst.set, inst.asset, inst.position).value);
    }
}
BENCHMARK(BM_IntrinsicBisectionEs)->Arg(4)->Arg(8)->Arg(12);

void BM_MonetaryBracketing(benchmark::State& state) {
    const props::Instance inst = make_instance(props::SetFamily::es, int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            monetary_risk(inst.set, inst.asset, inst.position.payoff()).value);
    }
}
BENCHMARK(BM_MonetaryBracketing)->Arg(4)->Arg(12);

void BM_EsVertexEnumeration(benchmark::State& state) {
    const props::Instance inst = make_instance(props::SetFamily::es, int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(coherent_dual_set(inst.set).size());
    }
}
BENCHMARK(BM_EsVertexEnumeration)->Arg(6)->Arg(10)->Arg(12);

void BM_IntrinsicDualEs(benchmark::State& state) {
    const props::Instance inst = make_instance(props::SetFamily::es, int(state.range(0)));
    const auto vertices = coherent_dual_set(inst.set);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            intrinsic_dual(inst.set, inst.asset, inst.position, vertices));
    }
}
BENCHMARK(BM_IntrinsicDualEs)->Arg(6)->Arg(10)->Arg(12);

void BM_GeneratorPenaltySample(benchmark::State& state) {
    const props::Instance inst = make_instance(props::SetFamily::generator, 8);
    const auto sample = dual_sample(inst.set, 7, std::size_t(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            intrinsic_dual(inst.set, inst.asset, inst.position, sample));
    }
}
BENCHMARK(BM_GeneratorPenaltySample)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
