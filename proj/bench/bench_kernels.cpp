// Serial reference vs. OpenMP kernels for the Fock-space channel action, and
// the data-parallel boundary scan at one thread vs. the full team.

#include <benchmark/benchmark.h>

#include "cvea/fock.hpp"
#include "cvea/kraus.hpp"
#include "cvea/parallel.hpp"
#include "cvea/phase_diagram.hpp"

namespace {

cvea::FockDensity probe_state(int d) {
  return cvea::FockDensity::from_pure(cvea::psi_gamma_state(0.4, cvea::FockCutoff(d)));
}

const cvea::ChannelParams kChannel = cvea::make_channel_extra(0.7, 0.2);

void BM_ApplyReference(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rho = probe_state(d);
  const auto ks = cvea::channel_kraus(kChannel, cvea::FockCutoff(d));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvea::apply_to_mode_reference(rho, ks, cvea::Mode::first));
  }
}
BENCHMARK(BM_ApplyReference)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ApplyKernel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rho = probe_state(d);
  const auto ks = cvea::channel_kraus(kChannel, cvea::FockCutoff(d));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvea::apply_to_mode(rho, ks, cvea::Mode::first));
  }
}
BENCHMARK(BM_ApplyKernel)->Arg(8)->Arg(12)->Arg(16)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Fig3bScan(benchmark::State& state) {
  cvea::set_thread_count(static_cast<int>(state.range(0)));
  const auto grid = cvea::log_grid(0.05, 8.0, 41);
  for (auto _ : state) benchmark::DoNotOptimize(cvea::curve_fig3b(grid));
  cvea::set_thread_count(0);
}
BENCHMARK(BM_Fig3bScan)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
