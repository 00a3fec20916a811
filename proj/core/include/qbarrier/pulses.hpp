#pragma once

#include <complex>
#include <vector>

#include "qbarrier/grid.hpp"

namespace qbarrier {

using complexd = std::complex<double>;

enum class PulseShape {
  gaussian,      ///< f(t) ~ exp[i*carrier*t - (t/t0)^2]
  time_limited,  ///< f(t) ~ exp{i*carrier*t - 1/[1 - (t/(2 t0))^2]}, |t| < 2 t0
};

/// Single-photon pulse shape. carrier is the photon center frequency
/// (half the pump frequency), t0 the duration parameter.
struct PulseSpec {
  PulseShape shape = PulseShape::gaussian;
  double t0 = 20e-15;
  double carrier = 2.685e15;

  PulseSpec() = default;
  PulseSpec(PulseShape shape_, double t0_, double carrier_);
};

/// Time-domain amplitude with unit peak envelope (before any spectral
/// normalization). The time-limited shape is exactly zero for |t| >= 2 t0.
complexd pulse_time(const PulseSpec& spec, double t);

/// Complex spectral amplitude f(omega) on a uniform grid. The transform
/// convention is f(t) = (2 pi)^{-1/2} \int d omega e^{-i omega t} f(omega),
/// and f is defined on omega > 0 only.
class SampledPulse {
 public:
  SampledPulse(SpectralGrid grid, std::vector<complexd> amplitudes);

  const SpectralGrid& grid() const { return grid_; }
  const std::vector<complexd>& amplitudes() const { return amp_; }
  complexd amplitude(int i) const { return amp_[static_cast<std::size_t>(i)]; }

  /// Discrete L2 norm, sqrt(sum |f_j|^2 * d omega).
  double norm() const;
  bool is_normalized() const { return normalized_; }

  friend SampledPulse normalize(SampledPulse pulse);

 private:
  SpectralGrid grid_;
  std::vector<complexd> amp_;
  bool normalized_ = false;
};

/// Spectrum of the pulse by quadrature of the time-domain shape,
/// normalized to unit L2. Throws if the grid misses carrier +- 20/t0 or
/// if the boundary samples carry more than 1e-6 of the pulse power
/// (spectral leakage).
SampledPulse pulse_spectrum(const PulseSpec& spec, const SpectralGrid& grid);

/// Rescale to unit discrete L2 norm. Idempotent; rejects the zero vector.
SampledPulse normalize(SampledPulse pulse);

/// Complex field samples on the time grid conjugate to a SpectralGrid:
/// count points, dt = 2 pi / (count * d omega), centered on t = 0.
struct TimeSamples {
  double t_start = 0.0;
  double dt = 0.0;
  std::vector<complexd> values;

  double time(int k) const { return t_start + k * dt; }
  std::size_t size() const { return values.size(); }

  /// Discrete L2 norm, sqrt(sum |f_k|^2 * dt).
  double norm() const;
};

/// f(t_k) = (d omega / sqrt(2 pi)) sum_j f_j e^{-i omega_j t_k}.
/// Exact discrete inverse of spectrum_from_time on the conjugate grid.
TimeSamples time_from_spectrum(const SampledPulse& pulse);

/// f_j = (dt / sqrt(2 pi)) sum_k f(t_k) e^{+i omega_j t_k}; the samples
/// must live on the grid's conjugate time grid.
SampledPulse spectrum_from_time(const TimeSamples& samples,
                                const SpectralGrid& grid);

/// Default working grid: count points spanning [0.2, 1.8] * carrier.
SpectralGrid default_pulse_grid(double carrier, int count = 4096);

}  // namespace qbarrier
