#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fde/barriers.hpp"
#include "fde/grid.hpp"
#include "fde/kernels.hpp"
#include "fde/profiles.hpp"
#include "fde/solver.hpp"

namespace {

using namespace fde;

struct AssemblyFixture {
  ProblemParams p = make_params(6, 0.2);
  Grid g;
  std::vector<double> v;
  kernels::Workspace ws;
  kernels::Assembly a;

  explicit AssemblyFixture(std::size_t cells) : g(make_grid(p, 40.0, cells, 1.0 + 8.0 / cells)) {
    v.resize(g.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval_rescaled_profile(p, 0.5, g.r[i]);
    a = {&p, &g, v, v, 1e-3, g.n_nodes() - 1, false};
  }
};

void BM_assemble_serial(benchmark::State& st) {
  AssemblyFixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::assemble_serial(f.a, f.ws);
    benchmark::DoNotOptimize(f.ws.residual.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_assemble_omp(benchmark::State& st) {
  AssemblyFixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::assemble_omp(f.a, f.ws);
    benchmark::DoNotOptimize(f.ws.residual.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

struct SweepFixture {
  ProblemParams p = make_params(6, 0.2);
  TailSpec tail{5.0, 0.5, 0.5, 1.0};
  BarrierBuild b;
  std::vector<double> xi;
  std::vector<double> out;

  explicit SweepFixture(std::size_t n)
      : b(build_supersolution(p, tail, make_initial_data(p, tail).info)),
        xi(log_grid(1e-4, 1e6, n)),
        out(n) {}
};

void BM_sweep_serial(benchmark::State& st) {
  SweepFixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::sweep_A_serial(f.b.barrier, f.xi, f.out, 1e-9);
    benchmark::DoNotOptimize(f.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_sweep_omp(benchmark::State& st) {
  SweepFixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    kernels::sweep_A_omp(f.b.barrier, f.xi, f.out, 1e-9);
    benchmark::DoNotOptimize(f.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_assemble_serial)->RangeMultiplier(4)->Range(800, 204800);
BENCHMARK(BM_assemble_omp)->RangeMultiplier(4)->Range(800, 204800);
BENCHMARK(BM_sweep_serial)->RangeMultiplier(10)->Range(10000, 1000000);
BENCHMARK(BM_sweep_omp)->RangeMultiplier(10)->Range(10000, 1000000);

BENCHMARK_MAIN();
