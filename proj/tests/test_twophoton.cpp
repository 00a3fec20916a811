#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qbarrier/constants.hpp"
#include "qbarrier/errors.hpp"
#include "qbarrier/twophoton.hpp"
#include "test_helpers.hpp"

using namespace qbarrier;
using qbtest::kCarrier;
using qbtest::kPumpOmega;

namespace {

constexpr double kT0 = 20e-15;

SampledPulse reference_pulse(PulseShape shape = PulseShape::gaussian,
                             int points = 1024) {
  return pulse_spectrum(PulseSpec(shape, kT0, kCarrier),
                        default_pulse_grid(kCarrier, points));
}

std::vector<complexd> ones(int n) {
  return std::vector<complexd>(static_cast<std::size_t>(n), complexd(1.0, 0.0));
}

std::vector<complexd> pure_delay(const SpectralGrid& grid, double tau) {
  std::vector<complexd> arm(static_cast<std::size_t>(grid.count()));
  for (int i = 0; i < grid.count(); ++i) {
    arm[static_cast<std::size_t>(i)] = std::polar(1.0, grid.omega(i) * tau);
  }
  return arm;
}

/// s grid with 2049 points so s = 0 is an exact node.
std::vector<double> s_grid_with_zero() {
  std::vector<double> s(2049);
  for (int i = 0; i < 2049; ++i) {
    s[static_cast<std::size_t>(i)] = -5e-6 + 20e-6 * i / 2048.0;
  }
  return s;
}

}  // namespace

TEST_CASE("kernel vanishes for a transparent arm at zero delay") {
  const SampledPulse pulse = reference_pulse();
  const auto arm = ones(pulse.grid().count());
  const KernelResult at_zero = coincidence_kernel(kPumpOmega, 0.0, pulse, arm);
  const KernelResult far = coincidence_kernel(kPumpOmega, 40e-6, pulse, arm);
  CHECK(std::abs(at_zero.value) < 1e-12 * far.value);
  CHECK(at_zero.imag_fraction < 1e-8);
}

TEST_CASE("kernel plateau equals the overlap-free integral") {
  const SampledPulse pulse = reference_pulse();
  const SpectralGrid& grid = pulse.grid();
  const auto arm = ones(grid.count());

  // independent quadrature of |f(w)|^2 |f(W-w)|^2 w (W-w) over the grid
  double plateau = 0.0;
  const int n = grid.count();
  for (int j = 0; j < n; ++j) {
    const double w = grid.omega(j);
    const double trap = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    plateau += std::norm(pulse.amplitude(j)) *
               std::norm(pulse.amplitude(n - 1 - j)) * w * (kPumpOmega - w) *
               trap * grid.spacing();
  }
  const KernelResult far = coincidence_kernel(kPumpOmega, 60e-6, pulse, arm);
  CHECK(far.value == doctest::Approx(plateau).epsilon(1e-6));
}

TEST_CASE("pure spectral delay shifts the dip to -c tau / 2") {
  const SampledPulse pulse = reference_pulse();
  const double tau = 5e-15;
  const auto arm = pure_delay(pulse.grid(), tau);
  const auto s_values = default_s_grid(2048);
  const CoincidenceScan scan = coincidence_scan_amplitudes(
      arm, pulse, PumpSpec::narrowband(kPumpOmega), s_values);
  const DipResult dip = find_dip(scan, 0.0);

  const double expected_s0 = -speed_of_light * tau / 2.0;  // -0.7495 um
  CHECK(dip.s0 == doctest::Approx(expected_s0).epsilon(0.01));
  CHECK(dip.delta_tau == doctest::Approx(-tau).epsilon(0.01));
  CHECK(dip.tau_t == doctest::Approx(tau).epsilon(0.01));
  CHECK(dip.r_min < 1e-6);
  CHECK(dip.fringe_count == 1);
}

TEST_CASE("empty barrier gives the textbook dip at s = 0") {
  const auto s_values = s_grid_with_zero();
  const CoincidenceScan scan =
      coincidence_scan(LayerStack(), PulseSpec(PulseShape::gaussian, kT0, kCarrier),
                       PumpSpec::narrowband(kPumpOmega), s_values,
                       default_pulse_grid(kCarrier, 1024));
  // R(0) == 0 on the exact node
  const std::size_t zero_index = 512;
  CHECK(scan.s[zero_index] == doctest::Approx(0.0));
  CHECK(scan.r[zero_index] < 1e-10);

  const DipResult dip = find_dip(scan, 0.0);
  CHECK(std::abs(dip.s0) < 2e-8);  // within a refined grid step
  CHECK(dip.fringe_count == 1);
  CHECK(dip.delta_tau == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dip.tau_t + dip.delta_tau == doctest::Approx(0.0));
}

TEST_CASE("constant-phase arm keeps a unique zero dip") {
  const SampledPulse pulse = reference_pulse();
  std::vector<complexd> arm(static_cast<std::size_t>(pulse.grid().count()),
                            std::polar(0.8, 0.7));
  const CoincidenceScan scan = coincidence_scan_amplitudes(
      arm, pulse, PumpSpec::narrowband(kPumpOmega), default_s_grid(2048));
  const DipResult dip = find_dip(scan, 0.0);
  CHECK(dip.r_min < 1e-8);
  CHECK(dip.fringe_count == 1);
}

TEST_CASE("H(LH)^5 barrier: superluminal single dip") {
  const LayerStack stack = build_quarter_wave_stack(
      5, qbtest::tio2(), qbtest::silica(), kCarrier);
  const CoincidenceScan scan = coincidence_scan(
      stack, PulseSpec(PulseShape::gaussian, kT0, kCarrier),
      PumpSpec::narrowband(kPumpOmega), default_s_grid(2048),
      default_pulse_grid(kCarrier, 1024));
  CHECK(scan.max_imag_fraction < 1e-8);
  for (double r : scan.r) CHECK(r >= -1e-10);

  const DipResult dip = find_dip(scan, stack.total_thickness());
  CHECK(dip.fringe_count == 1);
  CHECK(dip.s0 > 0.0);
  CHECK(dip.tau_t > 0.0);
  CHECK(dip.tau_t < stack.total_thickness() / speed_of_light);
}

TEST_CASE("N = 41 lossless with the time-limited pulse shows fringes") {
  const LayerStack stack = build_quarter_wave_stack(
      20, qbtest::tio2(), qbtest::silica(), kCarrier);
  const CoincidenceScan scan = coincidence_scan(
      stack, PulseSpec(PulseShape::time_limited, kT0, kCarrier),
      PumpSpec::narrowband(kPumpOmega), default_s_grid(2048),
      default_pulse_grid(kCarrier, 2048));
  const DipResult dip = find_dip(scan, stack.total_thickness());
  CHECK(dip.fringe_count > 1);
}

TEST_CASE("delay covariance: extra phase slides the dip rigidly") {
  const LayerStack stack = build_quarter_wave_stack(
      5, qbtest::tio2(), qbtest::silica(), kCarrier);
  const SpectralGrid grid = default_pulse_grid(kCarrier, 1024);
  const SampledPulse pulse =
      pulse_spectrum(PulseSpec(PulseShape::gaussian, kT0, kCarrier), grid);
  const auto t12 = transmittance_scan(stack, grid);

  const double l = stack.total_thickness();
  std::vector<complexd> arm(t12.size());
  for (int i = 0; i < grid.count(); ++i) {
    arm[static_cast<std::size_t>(i)] =
        t12[static_cast<std::size_t>(i)] *
        std::polar(1.0, -grid.omega(i) * l / speed_of_light);
  }
  const double tau_extra = 3e-15;
  std::vector<complexd> delayed(arm.size());
  for (int i = 0; i < grid.count(); ++i) {
    delayed[static_cast<std::size_t>(i)] =
        arm[static_cast<std::size_t>(i)] *
        std::polar(1.0, grid.omega(i) * tau_extra);
  }

  const auto s_values = default_s_grid(2048);
  const PumpSpec pump = PumpSpec::narrowband(kPumpOmega);
  const DipResult base =
      find_dip(coincidence_scan_amplitudes(arm, pulse, pump, s_values), l);
  const DipResult moved =
      find_dip(coincidence_scan_amplitudes(delayed, pulse, pump, s_values), l);

  const double step = s_values[1] - s_values[0];
  CHECK(std::abs((moved.s0 - base.s0) + speed_of_light * tau_extra / 2.0) <
        step);
  CHECK(moved.r_min == doctest::Approx(base.r_min).epsilon(1e-4));
  CHECK(moved.fringe_count == base.fringe_count);
}

TEST_CASE("tabulated pump approaches the narrowband limit") {
  const SampledPulse pulse = reference_pulse();
  const auto arm = pure_delay(pulse.grid(), 2e-15);
  const auto s_values = default_s_grid(512);

  const CoincidenceScan narrow = coincidence_scan_amplitudes(
      arm, pulse, PumpSpec::narrowband(kPumpOmega), s_values);

  // a tight triangular alpha^2 around omega0
  const double half = 5e11;
  std::vector<double> nodes = {kPumpOmega - half, kPumpOmega,
                               kPumpOmega + half};
  std::vector<double> alpha = {0.0, 1.0 / half, 0.0};
  const CoincidenceScan tab = coincidence_scan_amplitudes(
      arm, pulse, PumpSpec::tabulated(nodes, alpha), s_values);

  for (std::size_t i = 0; i < narrow.r.size(); ++i) {
    CHECK(tab.r[i] == doctest::Approx(narrow.r[i]).epsilon(1e-3));
  }
}

TEST_CASE("pump validation") {
  CHECK_THROWS_AS(PumpSpec::narrowband(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PumpSpec::tabulated({1.0, 2.0}, {0.5, -0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PumpSpec::tabulated({1.0, 2.0}, {2.0, 2.0}),
                  std::invalid_argument);  // integral != 1
  CHECK_THROWS_AS(PumpSpec::tabulated({2.0, 1.0}, {1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("kernel rejects Omega outside twice the grid span") {
  const SampledPulse pulse = reference_pulse();
  const auto arm = ones(pulse.grid().count());
  CHECK_THROWS_AS(
      coincidence_kernel(3.0 * pulse.grid().omega_max(), 0.0, pulse, arm),
      std::invalid_argument);
  CHECK_THROWS_AS(
      coincidence_kernel(0.5 * pulse.grid().omega_min(), 0.0, pulse, arm),
      std::invalid_argument);
}

TEST_CASE("scan reports a plateau that is never reached") {
  const SampledPulse pulse = reference_pulse();
  const auto arm = ones(pulse.grid().count());
  // the window ends inside the dip slope
  std::vector<double> s(128);
  for (int i = 0; i < 128; ++i) {
    s[static_cast<std::size_t>(i)] = -0.5e-6 + 1e-6 * i / 127.0;
  }
  CHECK_THROWS_AS(coincidence_scan_amplitudes(
                      arm, pulse, PumpSpec::narrowband(kPumpOmega), s),
                  NumericError);
}

TEST_CASE("fringe threshold is configurable") {
  const SampledPulse pulse = reference_pulse();
  const auto arm = pure_delay(pulse.grid(), 2e-15);
  const CoincidenceScan scan = coincidence_scan_amplitudes(
      arm, pulse, PumpSpec::narrowband(kPumpOmega), default_s_grid(2048));
  CHECK_THROWS_AS(find_dip(scan, 0.0, 1.5), std::invalid_argument);
  const DipResult dip = find_dip(scan, 0.0, 0.5);
  CHECK(dip.fringe_count == 1);
}

TEST_CASE("scan without an interior minimum is reported distinctly") {
  const SampledPulse pulse = reference_pulse();
  const auto arm = ones(pulse.grid().count());
  // the whole window sits on the plateau, far from any overlap
  std::vector<double> s(128);
  for (int i = 0; i < 128; ++i) {
    s[static_cast<std::size_t>(i)] = 50e-6 + 1e-8 * i;
  }
  const CoincidenceScan scan = coincidence_scan_amplitudes(
      arm, pulse, PumpSpec::narrowband(kPumpOmega), s);
  CHECK_THROWS_AS(find_dip(scan, 0.0), NumericError);
}

TEST_CASE("transmitted profiles") {
  const SpectralGrid grid = default_pulse_grid(kCarrier, 2048);
  const PulseSpec limited(PulseShape::time_limited, kT0, kCarrier);

  SUBCASE("empty stack returns the incoming pulse") {
    const TransmittedPulse out =
        transmitted_profiles(LayerStack(), limited, grid);
    const SampledPulse incoming = pulse_spectrum(limited, grid);
    for (int i = 0; i < grid.count(); ++i) {
      CHECK(std::abs(out.spectrum.amplitude(i) - incoming.amplitude(i)) <
            1e-12);
    }
    const double peak =
        *std::max_element(out.intensity.begin(), out.intensity.end());
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("N = 11 keeps a single lobe, N = 41 fragments") {
    const auto count_peaks = [](const std::vector<double>& intensity) {
      int peaks = 0;
      for (std::size_t i = 1; i + 1 < intensity.size(); ++i) {
        if (intensity[i] > 0.2 && intensity[i] > intensity[i - 1] &&
            intensity[i] > intensity[i + 1]) {
          ++peaks;
        }
      }
      return peaks;
    };
    const TransmittedPulse n11 = transmitted_profiles(
        build_quarter_wave_stack(5, qbtest::tio2(), qbtest::silica_lossy(),
                                 kCarrier),
        limited, grid);
    const TransmittedPulse n41 = transmitted_profiles(
        build_quarter_wave_stack(20, qbtest::tio2(), qbtest::silica_lossy(),
                                 kCarrier),
        limited, grid);
    CHECK(count_peaks(n11.intensity) == 1);
    CHECK(count_peaks(n41.intensity) >= 2);

    // spectral overlap with the incoming line shape drops with N
    const SampledPulse incoming = pulse_spectrum(limited, grid);
    const auto overlap = [&incoming, &grid](const SampledPulse& outgoing) {
      complexd acc(0.0, 0.0);
      for (int i = 0; i < grid.count(); ++i) {
        acc += std::conj(outgoing.amplitude(i)) * incoming.amplitude(i);
      }
      return std::norm(acc * grid.spacing());
    };
    CHECK(overlap(n41.spectrum) < overlap(n11.spectrum));
  }
}
