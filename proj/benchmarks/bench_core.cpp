#include <benchmark/benchmark.h>

#include "dshock/fv_solver.hpp"
#include "dshock/riemann.hpp"
#include "dshock/singular_config.hpp"
#include "dshock/viscous_profile.hpp"

using namespace dshock;

namespace {

const ModelParams kP(2.0, 1.0);
const RiemannData kRd{{1.9, 1.0}, {1.1, 1.1 / 1.9}};

void BM_ShockQuantities(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(shock_quantities(kRd, kP));
}
BENCHMARK(BM_ShockQuantities);

void BM_BuildConfiguration(benchmark::State& st) {
  const ShockQuantities sq = shock_quantities(kRd, kP);
  for (auto _ : st) benchmark::DoNotOptimize(build_configuration(kRd, sq, kP));
}
BENCHMARK(BM_BuildConfiguration)->Unit(benchmark::kMillisecond);

void BM_LfStep(benchmark::State& st) {
  Grid1D g;
  g.n_cells = static_cast<std::size_t>(st.range(0));
  FvState s = riemann_initial_state(kRd, g);
  for (auto _ : st) benchmark::DoNotOptimize(lf_step(s, kP, 0.05));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_LfStep)->Arg(400)->Arg(1600);

void BM_Fire(benchmark::State& st) {
  const double eps = 1.0 / static_cast<double>(st.range(0));
  const ShockQuantities sq = shock_quantities(kRd, kP);
  const ShootingParams sp = default_params(kRd, kP, eps);
  Shot last;
  for (auto _ : st) benchmark::DoNotOptimize(last = fire(sp, kRd, sq, kP, eps, ShotOptions{}, false));
  st.SetLabel(to_string(last.status));
}
BENCHMARK(BM_Fire)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
