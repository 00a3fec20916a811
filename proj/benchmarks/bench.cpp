#include <benchmark/benchmark.h>

#include "qbarrier/experiment.hpp"
#include "qbarrier/pulses.hpp"
#include "qbarrier/transfer.hpp"
#include "qbarrier/twophoton.hpp"

namespace {

using namespace qbarrier;

constexpr double kCarrier = 2.685e15;
constexpr double kPump = 5.37e15;

LayerStack lossy_stack(int k) {
  return build_quarter_wave_stack(k, ConstantIndex(2.22, 0.0),
                                  ConstantIndex(1.41, 0.0372), kCarrier);
}

void BM_StackTransfer(benchmark::State& state) {
  const LayerStack stack = lossy_stack(static_cast<int>(state.range(0)));
  double omega = kCarrier;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stack_transfer(stack, omega));
    omega += 1e9;
  }
}
BENCHMARK(BM_StackTransfer)->Arg(5)->Arg(20);

void BM_TransmittanceScan(benchmark::State& state) {
  const LayerStack stack = lossy_stack(20);
  const SpectralGrid grid = default_pulse_grid(kCarrier, 4096);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transmittance_scan(stack, grid));
  }
}
BENCHMARK(BM_TransmittanceScan);

void BM_ScatteringMatrices(benchmark::State& state) {
  const LayerStack stack = lossy_stack(20);
  double omega = kCarrier;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scattering_matrices(stack, omega));
    omega += 1e9;
  }
}
BENCHMARK(BM_ScatteringMatrices);

void BM_PulseSpectrum(benchmark::State& state) {
  const PulseSpec spec(PulseShape::time_limited, 20e-15, kCarrier);
  const SpectralGrid grid = default_pulse_grid(kCarrier, 4096);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pulse_spectrum(spec, grid));
  }
}
BENCHMARK(BM_PulseSpectrum);

void BM_CoincidenceKernel(benchmark::State& state) {
  const SpectralGrid grid = default_pulse_grid(kCarrier, 4096);
  const SampledPulse pulse =
      pulse_spectrum(PulseSpec(PulseShape::gaussian, 20e-15, kCarrier), grid);
  const std::vector<complexd> t12 = transmittance_scan(lossy_stack(20), grid);
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_kernel(kPump, s, pulse, t12));
    s += 1e-9;
  }
}
BENCHMARK(BM_CoincidenceKernel);

void BM_CoincidenceScan(benchmark::State& state) {
  const LayerStack stack = lossy_stack(20);
  const PulseSpec pulse(PulseShape::time_limited, 20e-15, kCarrier);
  const PumpSpec pump = PumpSpec::narrowband(kPump);
  const SpectralGrid grid = default_pulse_grid(kCarrier, 4096);
  const std::vector<double> s_values =
      default_s_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_scan(stack, pulse, pump, s_values, grid));
  }
}
BENCHMARK(BM_CoincidenceScan)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_TimeFromSpectrum(benchmark::State& state) {
  const SpectralGrid grid =
      default_pulse_grid(kCarrier, static_cast<int>(state.range(0)));
  const SampledPulse pulse =
      pulse_spectrum(PulseSpec(PulseShape::gaussian, 20e-15, kCarrier), grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(time_from_spectrum(pulse));
  }
}
BENCHMARK(BM_TimeFromSpectrum)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
