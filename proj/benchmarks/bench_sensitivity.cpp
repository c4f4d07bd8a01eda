#include <benchmark/benchmark.h>

#include "shapeopt/fea/solver.hpp"
#include "shapeopt/io/bench.hpp"
#include "shapeopt/parallel.hpp"
#include "shapeopt/sensitivity/adjoint.hpp"
#include "shapeopt/sensitivity/element_jacobian.hpp"
#include "shapeopt/sensitivity/structural_problem.hpp"

namespace {

using namespace shapeopt;

void BM_ElementJacobian(benchmark::State& state) {
    const fea::BeamColumn e{1, 1, 2, fea::SectionMaterial::reference()};
    const fea::ElementCoords xe{0.1, 0.2, 0.3, 1.4, 0.9, 1.1};
    for (auto _ : state) benchmark::DoNotOptimize(sens::element_stiffness_jacobian(e, xe));
}
BENCHMARK(BM_ElementJacobian);

void BM_SensitivitySequential(benchmark::State& state) {
    const auto frame = io::make_bench_frame(static_cast<std::size_t>(state.range(0)), 7);
    const auto solve = fea::analyze(frame.model);
    for (auto _ : state) benchmark::DoNotOptimize(sens::nodal_coordinate_gradient(frame.model, solve, 1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SensitivitySequential)->RangeMultiplier(2)->Range(120, 1920)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SensitivityParallel(benchmark::State& state) {
    const auto frame = io::make_bench_frame(static_cast<std::size_t>(state.range(0)), 7);
    const auto solve = fea::analyze(frame.model);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sens::nodal_coordinate_gradient(frame.model, solve, default_workers()));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SensitivityParallel)->RangeMultiplier(2)->Range(120, 1920)->Unit(benchmark::kMillisecond)->Complexity();

void BM_AdjointGradient(benchmark::State& state) {
    const auto frame = io::make_bench_frame(static_cast<std::size_t>(state.range(0)), 7);
    const sens::StructuralProblem problem(frame.model, frame.design);
    const Eigen::VectorXd x = frame.design.current_x(frame.model);
    for (auto _ : state) {
        Eigen::VectorXd xp = x;
        xp[0] += 1e-9 * static_cast<double>(state.iterations() % 2);  // defeat the solve cache
        benchmark::DoNotOptimize(problem.evaluate(xp));
    }
}
BENCHMARK(BM_AdjointGradient)->Arg(480)->Arg(1920)->Unit(benchmark::kMillisecond);

void BM_FiniteDifferenceGradient(benchmark::State& state) {
    const auto frame = io::make_bench_frame(static_cast<std::size_t>(state.range(0)), 7);
    const sens::StructuralProblem problem(frame.model, frame.design);
    const Eigen::VectorXd x = frame.design.current_x(frame.model);
    for (auto _ : state) benchmark::DoNotOptimize(sens::finite_difference_gradient(problem, x));
}
BENCHMARK(BM_FiniteDifferenceGradient)->Arg(480)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
