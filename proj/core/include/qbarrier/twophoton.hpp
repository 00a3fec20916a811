#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "qbarrier/materials.hpp"
#include "qbarrier/pulses.hpp"
#include "qbarrier/transfer.hpp"

namespace qbarrier {

/// Pump (laser) spectral weight. Narrowband mode collapses the pump
/// integral to the center frequency; tabulated mode integrates
/// alpha^2(Omega) over its own grid (nonnegative, unit integral).
struct PumpSpec {
  enum class Mode { narrowband, tabulated };

  double omega0 = 5.37e15;
  Mode mode = Mode::narrowband;
  std::vector<double> omega_nodes;  ///< tabulated Omega grid (ascending)
  std::vector<double> alpha_sq;     ///< alpha^2 at the nodes

  static PumpSpec narrowband(double omega0 = 5.37e15);
  static PumpSpec tabulated(std::vector<double> omega_nodes,
                            std::vector<double> alpha_sq);
};

struct KernelResult {
  double value = 0.0;          ///< Re of the symmetrized integral
  double imag_fraction = 0.0;  ///< |Im| / max(|Re|, tiny), should be ~0
};

/// Two-photon coincidence integrand F(Omega; s): quadrature over
/// omega in (0, Omega) of
///   |f(w)|^2 |f(W-w)|^2 w (W-w) T12*(W-w) [T12(W-w)
///       - e^{-2i W s/c} e^{4i w s/c} T12(w)],
/// evaluated as the omega <-> Omega-omega symmetrized integrand; the
/// returned value is its real part, the imaginary residual is recorded.
/// t12 must be sampled on the pulse grid.
KernelResult coincidence_kernel(double Omega, double s,
                                const SampledPulse& pulse,
                                std::span<const complexd> t12);

/// Normalized coincidence profile over translation lengths s.
/// The plateau (mean over the trailing 10% of the s range) is scaled
/// to 1; raw values divided by `normalization` recover arbitrary units.
struct CoincidenceScan {
  std::vector<double> s;
  std::vector<double> r;
  double normalization = 1.0;
  double max_imag_fraction = 0.0;
};

/// Scan R(s) for an explicit one-arm relative amplitude sampled on the
/// pulse grid (the barrier amplitude net of the vacuum path it displaces,
/// or any synthetic transmittance).
CoincidenceScan coincidence_scan_amplitudes(std::span<const complexd> arm,
                                            const SampledPulse& pulse,
                                            const PumpSpec& pump,
                                            std::span<const double> s_values);

/// Scan R(s) for a physical barrier: arm amplitude is
/// T12(omega) e^{-i omega l / c} with l the barrier thickness, so that
/// s = 0 marks balanced interferometer arms with the barrier removed.
CoincidenceScan coincidence_scan(const LayerStack& stack,
                                 const PulseSpec& pulse, const PumpSpec& pump,
                                 std::span<const double> s_values,
                                 const SpectralGrid& grid);

/// Dip census of a normalized scan. delta_tau = 2 s0 / c is the temporal
/// lead of the barrier photon, tau_t = l/c - delta_tau the traversal time.
struct DipResult {
  double s0 = 0.0;     ///< refined global minimizer (meters)
  double r_min = 0.0;  ///< refined minimum value
  double delta_tau = 0.0;
  double tau_t = 0.0;
  std::vector<std::pair<double, double>> minima;  ///< refined (s, R) minima
  int fringe_count = 0;
};

/// Locates the global minimum on the grid, refines it (and every strict
/// local minimum below fringe_threshold * plateau) by parabolic
/// interpolation. Requires >= 64 samples; throws NumericError when no
/// interior minimum exists (flat scan).
DipResult find_dip(const CoincidenceScan& scan, double barrier_thickness,
                   double fringe_threshold = 0.98);

/// Transmitted single-photon profiles: spectrum fbar ~ f * T12
/// (unit L2) and peak-normalized intensity |fbar(t)|^2 on the conjugate
/// time grid, with the barrier referenced in place (vacuum-displacement
/// phase removed).
struct TransmittedPulse {
  SampledPulse spectrum;
  TimeSamples field;
  std::vector<double> intensity;  ///< |field|^2 / max
};

TransmittedPulse transmitted_profiles(const LayerStack& stack,
                                      const PulseSpec& pulse,
                                      const SpectralGrid& grid);

/// Default translation-length grid: count points over [-5, 15] um.
std::vector<double> default_s_grid(int count = 2048);

}  // namespace qbarrier
