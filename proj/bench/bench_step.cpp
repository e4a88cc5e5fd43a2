// OpenMP ap_step against the serial path on the shipped presets.

#include <benchmark/benchmark.h>

#include "relaxsim/models.hpp"
#include "relaxsim/presets.hpp"
#include "relaxsim/scheme.hpp"

using namespace relaxsim;

namespace {

struct Setup {
  SystemDescriptor sys;
  Grid1D grid;
  SchemeState state;
  double eps;
};

Setup make_setup(const std::string& preset, int cells) {
  const Preset p = make_preset(preset).with_cells(cells);
  Setup s{make_model(p.model, p.params), p.grid, {}, p.run.eps};
  s.state.cells = p.initial_field(s.sys, s.grid);
  s.state.dt = compute_dt(s.state, s.sys, s.grid, s.eps, 0.9, 1.0).dt;
  return s;
}

const char* preset_name(int64_t k) {
  static const char* names[] = {"euler-friction-paper", "coupled-paper", "m1-bump", "shallow-water-step"};
  return names[k];
}

void BM_step_parallel(benchmark::State& st) {
  const Setup s = make_setup(preset_name(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(ap_step(s.state, s.sys, s.grid, s.eps));
  st.SetItemsProcessed(st.iterations() * st.range(1));
  st.SetLabel(preset_name(st.range(0)));
}

void BM_step_serial(benchmark::State& st) {
  const Setup s = make_setup(preset_name(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(ap_step_serial(s.state, s.sys, s.grid, s.eps));
  st.SetItemsProcessed(st.iterations() * st.range(1));
  st.SetLabel(preset_name(st.range(0)));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int64_t k = 0; k < 4; ++k)
    for (int64_t cells : {100, 1000, 10000}) b->Args({k, cells});
}

}  // namespace

BENCHMARK(BM_step_parallel)->Apply(sizes)->UseRealTime();
BENCHMARK(BM_step_serial)->Apply(sizes)->UseRealTime();

BENCHMARK_MAIN();
