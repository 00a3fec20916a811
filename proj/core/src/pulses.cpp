#include "qbarrier/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbarrier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLeakageTol = 1e-6;

double envelope(const PulseSpec& spec, double t) {
  switch (spec.shape) {
    case PulseShape::gaussian: {
      const double u = t / spec.t0;
      return std::exp(-u * u);
    }
    case PulseShape::time_limited: {
      const double u = t / (2.0 * spec.t0);
      if (std::abs(u) >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - u * u));
    }
  }
  return 0.0;
}

}  // namespace

PulseSpec::PulseSpec(PulseShape shape_, double t0_, double carrier_)
    : shape(shape_), t0(t0_), carrier(carrier_) {
  if (!(t0 > 0.0) || !(carrier > 0.0)) {
    throw std::invalid_argument("PulseSpec: t0 and carrier must be positive");
  }
}

complexd pulse_time(const PulseSpec& spec, double t) {
  const double env = envelope(spec, t);
  if (env == 0.0) return {0.0, 0.0};
  return std::polar(env, spec.carrier * t);
}

SampledPulse::SampledPulse(SpectralGrid grid, std::vector<complexd> amplitudes)
    : grid_(grid), amp_(std::move(amplitudes)) {
  if (amp_.size() != static_cast<std::size_t>(grid_.count())) {
    throw std::invalid_argument(
        "SampledPulse: amplitude count must match the grid");
  }
}

double SampledPulse::norm() const {
  double acc = 0.0;
  for (const complexd& a : amp_) acc += std::norm(a);
  return std::sqrt(acc * grid_.spacing());
}

SampledPulse normalize(SampledPulse pulse) {
  const double n = pulse.norm();
  if (!(n > 0.0)) {
    throw std::invalid_argument("normalize: zero pulse");
  }
  for (complexd& a : pulse.amp_) a /= n;
  pulse.normalized_ = true;
  return pulse;
}

SampledPulse pulse_spectrum(const PulseSpec& spec, const SpectralGrid& grid) {
  const double bandwidth_margin = 20.0 / spec.t0;
  if (grid.omega_min() > spec.carrier - bandwidth_margin ||
      grid.omega_max() < spec.carrier + bandwidth_margin) {
    throw std::invalid_argument(
        "pulse_spectrum: grid must span carrier +- 20/t0");
  }

  // time support of the envelope; the integrand is smooth and vanishes
  // (with all derivatives) at the ends, so the trapezoid rule converges
  // spectrally and the only residual is aliasing at 2 pi / dt
  const double half_support =
      spec.shape == PulseShape::time_limited ? 2.0 * spec.t0 : 8.0 * spec.t0;
  const double nu_max = std::max(grid.omega_max() - spec.carrier,
                                 spec.carrier - grid.omega_min());
  const double dt_limit = std::numbers::pi / (4.0 * nu_max);
  const int n_steps = std::max(
      1024, static_cast<int>(std::ceil(2.0 * half_support / dt_limit)));
  const double dt = 2.0 * half_support / n_steps;

  std::vector<double> env(static_cast<std::size_t>(n_steps) + 1);
  for (int m = 0; m <= n_steps; ++m) {
    env[static_cast<std::size_t>(m)] = envelope(spec, -half_support + m * dt);
  }
  env.front() *= 0.5;
  env.back() *= 0.5;

  std::vector<complexd> amp(static_cast<std::size_t>(grid.count()));
  for (int i = 0; i < grid.count(); ++i) {
    const double nu = grid.omega(i) - spec.carrier;
    const complexd rot = std::polar(1.0, nu * dt);
    complexd phasor = std::polar(1.0, -nu * half_support);
    complexd acc(0.0, 0.0);
    for (int m = 0; m <= n_steps; ++m) {
      acc += env[static_cast<std::size_t>(m)] * phasor;
      phasor *= rot;
    }
    amp[static_cast<std::size_t>(i)] = acc * dt / std::sqrt(kTwoPi);
  }

  SampledPulse pulse = normalize(SampledPulse(grid, std::move(amp)));

  // share of the pulse power sitting in the boundary samples
  const double leak = (std::norm(pulse.amplitudes().front()) +
                       std::norm(pulse.amplitudes().back())) *
                      grid.spacing();
  if (leak > kLeakageTol) {
    throw std::invalid_argument(
        "pulse_spectrum: spectral leakage at the grid boundary exceeds 1e-6");
  }
  return pulse;
}

double TimeSamples::norm() const {
  double acc = 0.0;
  for (const complexd& v : values) acc += std::norm(v);
  return std::sqrt(acc * dt);
}

TimeSamples time_from_spectrum(const SampledPulse& pulse) {
  const SpectralGrid& grid = pulse.grid();
  const int n = grid.count();
  const double dw = grid.spacing();

  TimeSamples out;
  out.dt = kTwoPi / (n * dw);
  out.t_start = -0.5 * n * out.dt;
  out.values.resize(static_cast<std::size_t>(n));

  const double scale = dw / std::sqrt(kTwoPi);
  for (int k = 0; k < n; ++k) {
    const double t = out.time(k);
    const complexd rot = std::polar(1.0, -dw * t);
    complexd phasor = std::polar(1.0, -grid.omega_min() * t);
    complexd acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      acc += pulse.amplitude(j) * phasor;
      phasor *= rot;
    }
    out.values[static_cast<std::size_t>(k)] = acc * scale;
  }
  return out;
}

SampledPulse spectrum_from_time(const TimeSamples& samples,
                                const SpectralGrid& grid) {
  const int n = grid.count();
  if (samples.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(
        "spectrum_from_time: sample count must match the grid");
  }
  const double dw = grid.spacing();
  if (std::abs(samples.dt * dw * n / kTwoPi - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "spectrum_from_time: samples are not on the grid's conjugate "
        "time grid");
  }

  std::vector<complexd> amp(static_cast<std::size_t>(n));
  const double scale = samples.dt / std::sqrt(kTwoPi);
  for (int j = 0; j < n; ++j) {
    const double w = grid.omega(j);
    const complexd rot = std::polar(1.0, w * samples.dt);
    complexd phasor = std::polar(1.0, w * samples.t_start);
    complexd acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      acc += samples.values[static_cast<std::size_t>(k)] * phasor;
      phasor *= rot;
    }
    amp[static_cast<std::size_t>(j)] = acc * scale;
  }
  return SampledPulse(grid, std::move(amp));
}

SpectralGrid default_pulse_grid(double carrier, int count) {
  return SpectralGrid(0.2 * carrier, 1.8 * carrier, count);
}

}  // namespace qbarrier
