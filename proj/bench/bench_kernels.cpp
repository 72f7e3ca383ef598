// Serial reference vs OpenMP kernels for the three hot loops: synthesis,
// analysis, triad contraction.

#include <benchmark/benchmark.h>

#include "sqg/galerkin.hpp"
#include "sqg/kernels.hpp"

using namespace sqg;

namespace {

struct Setup {
    BasisPtr basis;
    QuadGridPtr grid;
    SineTable tab;
    std::vector<double> coeffs;
    GridField field;

    explicit Setup(int M)
        : basis(build_basis(M)),
          grid(grid_for_products(*basis, 2, 64)),
          tab(*basis, *grid),
          coeffs(static_cast<size_t>(M)),
          field(grid) {
        Rng rng(1);
        for (auto& c : coeffs) c = rng.normal();
        synthesize_kernel(*basis, coeffs, tab, field);
    }
};

Setup& setup(int M) {
    static Setup s256(256);
    static Setup s1024(1024);
    return M == 256 ? s256 : s1024;
}

void bench_synthesize_reference(benchmark::State& state) {
    Setup& s = setup(static_cast<int>(state.range(0)));
    GridField out(s.grid);
    for (auto _ : state) {
        synthesize_reference(*s.basis, s.coeffs, *s.grid, out);
        benchmark::DoNotOptimize(out.values().data());
    }
}

void bench_synthesize_omp(benchmark::State& state) {
    Setup& s = setup(static_cast<int>(state.range(0)));
    GridField out(s.grid);
    for (auto _ : state) {
        synthesize_kernel(*s.basis, s.coeffs, s.tab, out);
        benchmark::DoNotOptimize(out.values().data());
    }
}

void bench_analyze_reference(benchmark::State& state) {
    Setup& s = setup(static_cast<int>(state.range(0)));
    std::vector<double> out(s.coeffs.size());
    for (auto _ : state) {
        analyze_reference(*s.basis, s.field, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_analyze_omp(benchmark::State& state) {
    Setup& s = setup(static_cast<int>(state.range(0)));
    std::vector<double> out(s.coeffs.size());
    for (auto _ : state) {
        analyze_kernel(*s.basis, s.field, s.tab, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_contract_reference(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    BasisPtr basis = build_basis(m);
    CouplingTensor gamma = assemble_gamma(*basis, m, AssemblyMethod::closed_form);
    Rng rng(2);
    std::vector<double> theta(static_cast<size_t>(m)), out(static_cast<size_t>(m));
    for (auto& c : theta) c = rng.normal();
    for (auto _ : state) {
        contract_reference(gamma.slices(), theta, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bench_contract_omp(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    BasisPtr basis = build_basis(m);
    CouplingTensor gamma = assemble_gamma(*basis, m, AssemblyMethod::closed_form);
    Rng rng(2);
    std::vector<double> theta(static_cast<size_t>(m)), out(static_cast<size_t>(m));
    for (auto& c : theta) c = rng.normal();
    for (auto _ : state) {
        contract_kernel(gamma.slices(), theta, out);
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(bench_synthesize_reference)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_synthesize_omp)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_synthesize_omp)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_analyze_reference)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_analyze_omp)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_analyze_omp)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_contract_reference)->Arg(128)->Arg(512);
BENCHMARK(bench_contract_omp)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
