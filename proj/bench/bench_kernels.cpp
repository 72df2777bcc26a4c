#include <benchmark/benchmark.h>

#include <vector>

#include "fracbvp/builtin_problems.hpp"
#include "fracbvp/kernels.hpp"

using namespace fracbvp;
using kernels::Exec;

namespace {

Exec mode(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel x" + std::to_string(kernels::max_threads()));
}

void BM_AssembleNystrom(benchmark::State& state) {
  const GreenKernel kernel(builtin::example42().params);
  const QuadratureGrid grid(kernel.params().phi, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::assemble_nystrom(kernel, grid, mode(state)));
  label(state);
}

void BM_Matvec(benchmark::State& state) {
  const GreenKernel kernel(builtin::example42().params);
  const QuadratureGrid grid(kernel.params().phi, static_cast<std::size_t>(state.range(0)));
  const auto matrix = kernels::assemble_nystrom(kernel, grid, Exec::serial);
  std::vector<double> x(grid.size(), 1.0), y(grid.size());
  for (auto _ : state) {
    kernels::matvec(matrix, x, y, mode(state));
    benchmark::DoNotOptimize(y.data());
  }
  label(state);
}

void BM_KernelCheck(benchmark::State& state) {
  const GreenKernel kernel(builtin::example41().params);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_kernel_properties(kernel, static_cast<std::size_t>(state.range(0)), 1e-10, 1e-12,
                                                     mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_AssembleNystrom)->ArgsProduct({{512, 2048}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Matvec)->ArgsProduct({{512, 2048}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KernelCheck)->ArgsProduct({{200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
