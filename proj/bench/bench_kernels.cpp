#include <benchmark/benchmark.h>

#include "hypermode/degeneracy.hpp"
#include "hypermode/simulate.hpp"

namespace {

using namespace hypermode;

struct StepFixture {
    FirstOrderSystem fos;
    Grid1D grid;
    Eigen::MatrixXd v;
    CellOperators ops;

    StepFixture(const std::string& model, int N) {
        auto sys = builtin_model(model);
        if (auto* sos = std::get_if<SecondOrderSystem>(&sys)) {
            auto red = reduce_quasisemilinear(*sos);
            fos = red.target;
            grid = Grid1D{N, 6.283185307179586};
            v = initial_data(fos, red.layout, grid, 0.5);
        } else {
            fos = std::get<FirstOrderSystem>(sys);
            grid = Grid1D{N, 6.283185307179586};
            v = initial_data(fos, std::nullopt, grid, 1.0);
        }
        compute_cell_operators(fos, v, Tolerances{}, ops, Execution::Serial);
    }
};

Execution exec_of(const benchmark::State& state) {
    return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_CellOperators(benchmark::State& state, const char* model) {
    StepFixture f(model, static_cast<int>(state.range(0)));
    CellOperators ops;
    for (auto _ : state) {
        compute_cell_operators(f.fos, f.v, Tolerances{}, ops, exec_of(state));
        benchmark::DoNotOptimize(ops.radius.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TransportStep(benchmark::State& state, const char* model) {
    StepFixture f(model, static_cast<int>(state.range(0)));
    Eigen::MatrixXd out;
    for (auto _ : state) {
        transport_step(f.v, f.ops, 1e-3, f.grid.dx(), out, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SourceStep(benchmark::State& state) {
    StepFixture f("burgers-damped", static_cast<int>(state.range(0)));
    Eigen::MatrixXd out;
    for (auto _ : state) {
        source_step(f.fos, f.v, 1e-3, out, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClassifyModes(benchmark::State& state) {
    auto sys = builtin_model("random-qsl", 42);
    auto red = reduce_quasisemilinear(std::get<SecondOrderSystem>(sys));
    const auto states = sample_states(red.target.m, static_cast<int>(state.range(0)), 0.5, 1);
    const auto dirs = sample_directions(red.target.d, 8, 2);
    for (auto _ : state) {
        auto rep = classify_modes(red.target, states, dirs, DegeneracyConfig{}, exec_of(state));
        benchmark::DoNotOptimize(rep.rows.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CellOperators, burgers, "burgers")->ArgsProduct({{4096, 65536}, {0, 1}});
BENCHMARK_CAPTURE(BM_CellOperators, nlwave_qsl, "nlwave-qsl")->ArgsProduct({{4096, 65536}, {0, 1}});
BENCHMARK_CAPTURE(BM_TransportStep, nlwave_qsl, "nlwave-qsl")->ArgsProduct({{4096, 65536}, {0, 1}});
BENCHMARK(BM_SourceStep)->ArgsProduct({{4096, 65536}, {0, 1}});
BENCHMARK(BM_ClassifyModes)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
