#include "qbarrier/twophoton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qbarrier/constants.hpp"
#include "qbarrier/errors.hpp"

namespace qbarrier {

namespace {

constexpr double kImagFractionTol = 1e-8;
constexpr double kPlateauSpreadTol = 1e-3;  // relative sd over the tail

/// Precomputed per-Omega quadrature tables: node weights, arm amplitude
/// at omega and at Omega - omega (by exact index reversal when the grid
/// is symmetric about Omega/2, otherwise by linear interpolation).
struct KernelTables {
  double Omega = 0.0;
  int j_lo = 0;
  int j_hi = -1;
  double omega_lo = 0.0;
  double spacing = 0.0;
  std::vector<double> w;        // |f|^2 |f_rev|^2 w (W-w) * trapezoid weight
  std::vector<complexd> h;      // arm amplitude at omega_j
  std::vector<complexd> h_rev;  // arm amplitude at Omega - omega_j
  double base_scale = 0.0;      // s-independent part, sets the magnitude
};

complexd interp_complex(const SpectralGrid& grid,
                        std::span<const complexd> values, double x) {
  if (x <= grid.omega_min() || x >= grid.omega_max()) return {0.0, 0.0};
  const double u = (x - grid.omega_min()) / grid.spacing();
  const int j = std::min(static_cast<int>(u), grid.count() - 2);
  const double frac = u - j;
  return values[static_cast<std::size_t>(j)] * (1.0 - frac) +
         values[static_cast<std::size_t>(j) + 1] * frac;
}

KernelTables build_tables(double Omega, const SampledPulse& pulse,
                          std::span<const complexd> arm) {
  const SpectralGrid& grid = pulse.grid();
  const int n = grid.count();
  if (arm.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(
        "coincidence kernel: transmittance must be sampled on the pulse grid");
  }
  if (!(Omega > grid.omega_min()) || Omega > 2.0 * grid.omega_max()) {
    throw std::invalid_argument(
        "coincidence kernel: Omega outside twice the grid span");
  }

  KernelTables tab;
  tab.Omega = Omega;
  tab.spacing = grid.spacing();
  tab.j_lo = 0;
  tab.j_hi = n - 1;
  while (tab.j_hi >= 0 && grid.omega(tab.j_hi) >= Omega) --tab.j_hi;
  if (tab.j_hi - tab.j_lo < 2) {
    throw std::invalid_argument(
        "coincidence kernel: fewer than three quadrature nodes below Omega");
  }
  tab.omega_lo = grid.omega(tab.j_lo);

  const bool exact_reverse =
      std::abs(grid.omega_min() + grid.omega_max() - Omega) <= 1e-9 * Omega;

  const int m = tab.j_hi - tab.j_lo + 1;
  tab.w.resize(static_cast<std::size_t>(m));
  tab.h.resize(static_cast<std::size_t>(m));
  tab.h_rev.resize(static_cast<std::size_t>(m));

  for (int idx = 0; idx < m; ++idx) {
    const int j = tab.j_lo + idx;
    const double wj = grid.omega(j);
    const double wr = Omega - wj;
    complexd f_rev;
    complexd a_rev;
    if (exact_reverse) {
      f_rev = pulse.amplitude(n - 1 - j);
      a_rev = arm[static_cast<std::size_t>(n - 1 - j)];
    } else {
      f_rev = interp_complex(grid, pulse.amplitudes(), wr);
      a_rev = interp_complex(grid, arm, wr);
    }
    const double trap = (idx == 0 || idx == m - 1) ? 0.5 : 1.0;
    tab.w[static_cast<std::size_t>(idx)] = std::norm(pulse.amplitude(j)) *
                                           std::norm(f_rev) * wj * wr * trap *
                                           tab.spacing;
    tab.h[static_cast<std::size_t>(idx)] = arm[static_cast<std::size_t>(j)];
    tab.h_rev[static_cast<std::size_t>(idx)] = a_rev;
  }

  double base = 0.0;
  for (int idx = 0; idx < m; ++idx) {
    base += tab.w[static_cast<std::size_t>(idx)] *
            0.5 *
            (std::norm(tab.h[static_cast<std::size_t>(idx)]) +
             std::norm(tab.h_rev[static_cast<std::size_t>(idx)]));
  }
  tab.base_scale = base;
  return tab;
}

KernelResult evaluate_kernel(const KernelTables& tab, double s) {
  const double c = speed_of_light;
  const complexd P = std::polar(1.0, -2.0 * tab.Omega * s / c);

  // phases e^{4 i omega s / c} at omega_j and at Omega - omega_j; the two
  // recurrences run independently so the recorded imaginary residual is a
  // genuine symmetry diagnostic
  const complexd rot_fwd = std::polar(1.0, 4.0 * tab.spacing * s / c);
  const complexd rot_rev = std::polar(1.0, -4.0 * tab.spacing * s / c);
  complexd phase_fwd = std::polar(1.0, 4.0 * tab.omega_lo * s / c);
  complexd phase_rev = std::polar(1.0, 4.0 * (tab.Omega - tab.omega_lo) * s / c);

  complexd acc(0.0, 0.0);
  const std::size_t m = tab.w.size();
  for (std::size_t idx = 0; idx < m; ++idx) {
    const complexd h = tab.h[idx];
    const complexd hr = tab.h_rev[idx];
    const complexd g_fwd = std::conj(hr) * (hr - P * phase_fwd * h);
    const complexd g_rev = std::conj(h) * (h - P * phase_rev * hr);
    acc += tab.w[idx] * 0.5 * (g_fwd + g_rev);
    phase_fwd *= rot_fwd;
    phase_rev *= rot_rev;
  }

  KernelResult out;
  out.value = acc.real();
  const double scale = std::max(tab.base_scale,
                                std::numeric_limits<double>::min());
  out.imag_fraction = std::abs(acc.imag()) / scale;
  return out;
}

std::vector<std::pair<double, double>> pump_quadrature(const PumpSpec& pump) {
  if (pump.mode == PumpSpec::Mode::narrowband) {
    return {{pump.omega0, 1.0}};
  }
  const auto& x = pump.omega_nodes;
  const auto& a = pump.alpha_sq;
  std::vector<std::pair<double, double>> nodes;
  nodes.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double w = 0.0;
    if (i > 0) w += 0.5 * (x[i] - x[i - 1]);
    if (i + 1 < x.size()) w += 0.5 * (x[i + 1] - x[i]);
    nodes.emplace_back(x[i], a[i] * w);
  }
  return nodes;
}

}  // namespace

PumpSpec PumpSpec::narrowband(double omega0) {
  if (!(omega0 > 0.0)) {
    throw std::invalid_argument("PumpSpec: omega0 must be positive");
  }
  PumpSpec p;
  p.omega0 = omega0;
  p.mode = Mode::narrowband;
  return p;
}

PumpSpec PumpSpec::tabulated(std::vector<double> omega_nodes,
                             std::vector<double> alpha_sq) {
  if (omega_nodes.size() < 2 || omega_nodes.size() != alpha_sq.size()) {
    throw std::invalid_argument(
        "PumpSpec: tabulated mode needs >= 2 matching nodes");
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < omega_nodes.size(); ++i) {
    if (i > 0 && !(omega_nodes[i] > omega_nodes[i - 1])) {
      throw std::invalid_argument("PumpSpec: Omega nodes must be ascending");
    }
    if (alpha_sq[i] < 0.0) {
      throw std::invalid_argument("PumpSpec: alpha^2 must be nonnegative");
    }
    if (i > 0) {
      integral += 0.5 * (alpha_sq[i] + alpha_sq[i - 1]) *
                  (omega_nodes[i] - omega_nodes[i - 1]);
    }
  }
  if (std::abs(integral - 1.0) > 1e-8) {
    throw std::invalid_argument("PumpSpec: alpha^2 must have unit integral");
  }
  PumpSpec p;
  p.mode = Mode::tabulated;
  p.omega_nodes = std::move(omega_nodes);
  p.alpha_sq = std::move(alpha_sq);
  // weighted mean as the nominal center
  double mean = 0.0;
  for (std::size_t i = 0; i < p.omega_nodes.size(); ++i) {
    mean += p.omega_nodes[i] * p.alpha_sq[i];
  }
  double total = 0.0;
  for (double a : p.alpha_sq) total += a;
  p.omega0 = total > 0.0 ? mean / total : p.omega_nodes.front();
  return p;
}

KernelResult coincidence_kernel(double Omega, double s,
                                const SampledPulse& pulse,
                                std::span<const complexd> t12) {
  const KernelTables tab = build_tables(Omega, pulse, t12);
  return evaluate_kernel(tab, s);
}

CoincidenceScan coincidence_scan_amplitudes(std::span<const complexd> arm,
                                            const SampledPulse& pulse,
                                            const PumpSpec& pump,
                                            std::span<const double> s_values) {
  if (s_values.size() < 64) {
    throw std::invalid_argument("coincidence_scan: need >= 64 s samples");
  }
  for (std::size_t i = 1; i < s_values.size(); ++i) {
    if (!(s_values[i] > s_values[i - 1])) {
      throw std::invalid_argument("coincidence_scan: s grid must be ascending");
    }
  }

  const auto pump_nodes = pump_quadrature(pump);
  std::vector<KernelTables> tables;
  tables.reserve(pump_nodes.size());
  for (const auto& [Omega, weight] : pump_nodes) {
    (void)weight;
    tables.push_back(build_tables(Omega, pulse, arm));
  }

  CoincidenceScan scan;
  scan.s.assign(s_values.begin(), s_values.end());
  scan.r.resize(s_values.size(), 0.0);

  for (std::size_t k = 0; k < s_values.size(); ++k) {
    double value = 0.0;
    for (std::size_t t = 0; t < tables.size(); ++t) {
      const KernelResult res = evaluate_kernel(tables[t], s_values[k]);
      value += pump_nodes[t].second * res.value;
      scan.max_imag_fraction =
          std::max(scan.max_imag_fraction, res.imag_fraction);
    }
    scan.r[k] = value;
  }

  if (scan.max_imag_fraction > kImagFractionTol) {
    throw NumericError(
        "coincidence_scan: kernel imaginary residual exceeds 1e-8 "
        "(grid/convention error)");
  }

  // plateau from the trailing 10% of the s range; the dip and all fringes
  // sit at bounded |s| while large s has no wavepacket overlap left
  const std::size_t n = scan.r.size();
  const std::size_t tail = std::max<std::size_t>(4, n / 10);
  double mean = 0.0;
  for (std::size_t k = n - tail; k < n; ++k) mean += scan.r[k];
  mean /= static_cast<double>(tail);
  if (!(mean > 0.0)) {
    throw NumericError("coincidence_scan: plateau level is not positive");
  }
  double var = 0.0;
  for (std::size_t k = n - tail; k < n; ++k) {
    const double d = scan.r[k] - mean;
    var += d * d;
  }
  const double sd = std::sqrt(var / static_cast<double>(tail));
  if (sd / mean > kPlateauSpreadTol) {
    throw NumericError(
        "coincidence_scan: plateau not reached within the s range");
  }

  scan.normalization = mean;
  for (double& r : scan.r) {
    r /= mean;
    if (r < -1e-10) {
      throw NumericError("coincidence_scan: negative coincidence rate");
    }
  }
  return scan;
}

CoincidenceScan coincidence_scan(const LayerStack& stack,
                                 const PulseSpec& pulse, const PumpSpec& pump,
                                 std::span<const double> s_values,
                                 const SpectralGrid& grid) {
  const SampledPulse spectrum = pulse_spectrum(pulse, grid);
  const std::vector<complexd> t12 = transmittance_scan(stack, grid);

  // the barrier replaces a vacuum path of its own thickness; referencing
  // the arm amplitude to that path puts the empty-stack dip at s = 0 and
  // makes delta_tau = 2 s0 / c the photon's lead over vacuum
  const double l = stack.total_thickness();
  std::vector<complexd> arm(t12.size());
  for (int j = 0; j < grid.count(); ++j) {
    arm[static_cast<std::size_t>(j)] =
        t12[static_cast<std::size_t>(j)] *
        std::polar(1.0, -grid.omega(j) * l / speed_of_light);
  }
  return coincidence_scan_amplitudes(arm, spectrum, pump, s_values);
}

DipResult find_dip(const CoincidenceScan& scan, double barrier_thickness,
                   double fringe_threshold) {
  const std::size_t n = scan.r.size();
  if (n < 64) {
    throw std::invalid_argument("find_dip: need >= 64 samples");
  }
  if (!(fringe_threshold > 0.0) || !(fringe_threshold < 1.0)) {
    throw std::invalid_argument("find_dip: fringe threshold must be in (0, 1)");
  }

  std::size_t global = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (scan.r[i] < scan.r[global]) global = i;
  }
  if (global == 0 || global == n - 1) {
    throw NumericError("find_dip: no interior minimum (flat scan)");
  }
  if (scan.r[global] > 1.0 - 1e-6) {
    throw NumericError("find_dip: no interior minimum (flat scan)");
  }

  const auto refine = [&scan](std::size_t i) -> std::pair<double, double> {
    const double rm = scan.r[i - 1];
    const double r0 = scan.r[i];
    const double rp = scan.r[i + 1];
    const double denom = rm - 2.0 * r0 + rp;
    if (!(denom > 0.0)) return {scan.s[i], r0};
    const double step = scan.s[i + 1] - scan.s[i];
    const double shift = 0.5 * (rm - rp) / denom;
    return {scan.s[i] + shift * step, r0 - 0.125 * (rm - rp) * (rm - rp) / denom};
  };

  DipResult dip;
  bool found_global = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool strict_min = scan.r[i] < scan.r[i - 1] && scan.r[i] < scan.r[i + 1];
    if (!strict_min) continue;
    if (i != global && scan.r[i] >= fringe_threshold) continue;
    const auto [s_ref, r_ref] = refine(i);
    dip.minima.emplace_back(s_ref, r_ref);
    if (i == global) {
      dip.s0 = s_ref;
      dip.r_min = r_ref;
      found_global = true;
    }
  }
  if (!found_global) {
    // tie at the bottom; keep the grid point so s0 stays in the census
    dip.s0 = scan.s[global];
    dip.r_min = scan.r[global];
    dip.minima.emplace_back(dip.s0, dip.r_min);
    std::sort(dip.minima.begin(), dip.minima.end());
  }
  dip.fringe_count = static_cast<int>(dip.minima.size());
  dip.delta_tau = 2.0 * dip.s0 / speed_of_light;
  dip.tau_t = barrier_thickness / speed_of_light - dip.delta_tau;
  return dip;
}

TransmittedPulse transmitted_profiles(const LayerStack& stack,
                                      const PulseSpec& pulse,
                                      const SpectralGrid& grid) {
  const SampledPulse spectrum = pulse_spectrum(pulse, grid);
  const std::vector<complexd> t12 = transmittance_scan(stack, grid);
  const double l = stack.total_thickness();

  std::vector<complexd> amp(static_cast<std::size_t>(grid.count()));
  for (int j = 0; j < grid.count(); ++j) {
    amp[static_cast<std::size_t>(j)] =
        spectrum.amplitude(j) * t12[static_cast<std::size_t>(j)] *
        std::polar(1.0, -grid.omega(j) * l / speed_of_light);
  }
  SampledPulse raw(grid, std::move(amp));
  if (!(raw.norm() > 1e-12)) {
    throw NumericError(
        "transmitted_profiles: transmittance vanishes across the pulse band "
        "(total extinction)");
  }

  TransmittedPulse out{normalize(std::move(raw)), {}, {}};
  out.field = time_from_spectrum(out.spectrum);
  out.intensity.resize(out.field.size());
  double peak = 0.0;
  for (std::size_t k = 0; k < out.field.size(); ++k) {
    out.intensity[k] = std::norm(out.field.values[k]);
    peak = std::max(peak, out.intensity[k]);
  }
  for (double& v : out.intensity) v /= peak;
  return out;
}

std::vector<double> default_s_grid(int count) {
  if (count < 64) {
    throw std::invalid_argument("default_s_grid: need >= 64 samples");
  }
  std::vector<double> s(static_cast<std::size_t>(count));
  const double lo = -5e-6;
  const double hi = 15e-6;
  for (int i = 0; i < count; ++i) {
    s[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  return s;
}

}  // namespace qbarrier
