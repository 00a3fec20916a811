#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbarrier/constants.hpp"
#include "qbarrier/materials.hpp"
#include "test_helpers.hpp"

using namespace qbarrier;
using qbtest::kCarrier;

TEST_CASE("permittivity of vacuum is one at any frequency") {
  const MaterialModel vacuum = ConstantIndex(1.0, 0.0);
  for (double omega : {1e12, kCarrier, 1e17}) {
    const complexd eps = permittivity_at(vacuum, omega);
    CHECK(eps.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eps.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("permittivity of lossy silica matches the hand expansion") {
  // (1.41 + 0.0372i)^2 = 1.98671616 + 0.104904i
  const complexd eps = permittivity_at(qbtest::silica_lossy(), kCarrier);
  CHECK(eps.real() == doctest::Approx(1.98671616).epsilon(1e-12));
  CHECK(eps.imag() == doctest::Approx(0.104904).epsilon(1e-12));
}

TEST_CASE("Lorentz oscillator at resonance is purely absorptive") {
  const double wt = kCarrier;
  const LorentzOscillator lo(wt, 0.5 * wt, 0.05 * wt);
  const complexd eps = permittivity_at(lo, wt);
  CHECK(eps.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eps.imag() ==
        doctest::Approx(lo.omega_p * lo.omega_p / (lo.damping * wt))
            .epsilon(1e-12));
}

TEST_CASE("material validation") {
  CHECK_THROWS_AS(ConstantIndex(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConstantIndex(1.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(LorentzOscillator(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(LorentzOscillator(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(permittivity_at(qbtest::tio2(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(permittivity_at(qbtest::tio2(), -1.0), std::invalid_argument);
}

TEST_CASE("refractive index: examples and branch") {
  SUBCASE("real square root") {
    const ComplexIndex n = refractive_index({4.0, 0.0});
    CHECK(n.beta == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(n.gamma == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("inverse of the squaring example") {
    const ComplexIndex n = refractive_index({1.98671616, 0.104904});
    CHECK(n.beta == doctest::Approx(1.41).epsilon(1e-12));
    CHECK(n.gamma == doctest::Approx(0.0372).epsilon(1e-12));
  }
  SUBCASE("evanescent branch has gamma >= 0") {
    const ComplexIndex n = refractive_index({-1.0, 0.0});
    CHECK(n.beta == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(n.gamma == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("gain is rejected, tolerance band is not") {
    CHECK_THROWS_AS(refractive_index({2.0, -1e-6}), std::invalid_argument);
    const ComplexIndex n = refractive_index({4.0, -1e-13});
    CHECK(n.beta == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(n.gamma == 0.0);
  }
}

TEST_CASE("index round trip on a passive grid") {
  for (double beta = 1.0; beta <= 3.0; beta += 0.25) {
    for (double gamma = 0.0; gamma <= 0.5; gamma += 0.1) {
      const MaterialModel m = ConstantIndex(beta, gamma);
      const ComplexIndex n = index_at(m, kCarrier);
      CHECK(n.beta == doctest::Approx(beta).epsilon(1e-12));
      CHECK(n.gamma == doctest::Approx(gamma).epsilon(1e-12));
    }
  }
}

TEST_CASE("branch consistency for the Lorentz model across a wide band") {
  const LorentzOscillator lo(kCarrier, 0.5 * kCarrier, 0.05 * kCarrier);
  const SpectralGrid grid(kCarrier / 20.0, 20.0 * kCarrier, 1024);
  for (double omega : grid.omegas()) {
    const ComplexIndex n = index_at(lo, omega);
    CHECK(n.beta >= 0.0);
    CHECK(n.gamma >= 0.0);
  }
}

TEST_CASE("quarter-wave stack construction") {
  const double design = kCarrier;  // photon carrier, ~701.6 nm

  SUBCASE("k = 1 gives H, L, H") {
    const LayerStack stack =
        build_quarter_wave_stack(1, qbtest::tio2(), qbtest::silica(), design);
    REQUIRE(stack.layer_count() == 3);
    CHECK(index_at(stack.layers()[0].material, design).beta ==
          doctest::Approx(2.22));
    CHECK(index_at(stack.layers()[1].material, design).beta ==
          doctest::Approx(1.41));
    CHECK(index_at(stack.layers()[2].material, design).beta ==
          doctest::Approx(2.22));
  }

  SUBCASE("thicknesses are optical quarter waves") {
    const LayerStack stack = build_quarter_wave_stack(
        5, qbtest::tio2(), qbtest::silica_lossy(), design);
    REQUIRE(stack.layer_count() == 11);
    const double d_h = stack.layers()[0].thickness;
    const double d_l = stack.layers()[1].thickness;
    CHECK(d_h == doctest::Approx(79.003e-9).epsilon(1e-4));
    CHECK(d_l == doctest::Approx(124.392e-9).epsilon(1e-4));
    // lossy L uses only the real index part: same thickness as lossless
    const LayerStack lossless =
        build_quarter_wave_stack(5, qbtest::tio2(), qbtest::silica(), design);
    CHECK(d_l == doctest::Approx(lossless.layers()[1].thickness).epsilon(1e-15));
    // quarter-wave property beta * omega * d / c = pi / 2
    CHECK(2.22 * design * d_h / speed_of_light ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
    CHECK(1.41 * design * d_l / speed_of_light ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
  }

  SUBCASE("total thickness is the layer sum") {
    const LayerStack stack =
        build_quarter_wave_stack(5, qbtest::tio2(), qbtest::silica(), design);
    double sum = 0.0;
    for (const auto& layer : stack.layers()) sum += layer.thickness;
    CHECK(stack.total_thickness() == doctest::Approx(sum).epsilon(1e-15));
  }

  SUBCASE("k < 1 rejected") {
    CHECK_THROWS_AS(
        build_quarter_wave_stack(0, qbtest::tio2(), qbtest::silica(), design),
        std::invalid_argument);
  }
}

TEST_CASE("layer stack validation") {
  CHECK_THROWS_AS(LayerStack({{qbtest::tio2(), -1e-9}}, ConstantIndex(1.0, 0.0),
                             ConstantIndex(1.0, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(LayerStack({}, qbtest::silica_lossy(),
                             ConstantIndex(1.0, 0.0)),
                  std::invalid_argument);
  // zero thickness is the degenerate identity layer
  const LayerStack stack({{qbtest::tio2(), 0.0}}, ConstantIndex(1.0, 0.0),
                         ConstantIndex(1.0, 0.0));
  CHECK(stack.total_thickness() == 0.0);
}

TEST_CASE("Kramers-Kronig diagnostic") {
  const double wt = kCarrier;
  const MaterialModel lorentz = LorentzOscillator(wt, 0.5 * wt, 0.05 * wt);

  SUBCASE("Lorentz residual at least halves when the grid doubles") {
    const double r1 = kk_residual(lorentz, SpectralGrid(wt / 10, 10 * wt, 1024));
    const double r2 = kk_residual(lorentz, SpectralGrid(wt / 10, 10 * wt, 2048));
    const double r3 = kk_residual(lorentz, SpectralGrid(wt / 10, 10 * wt, 4096));
    CHECK(r2 < 0.5 * r1);
    CHECK(r3 < 0.5 * r2);
  }

  SUBCASE("zero-loss constant index reconstructs exactly zero") {
    const KkReconstruction rec = kk_reconstruction(
        qbtest::silica(), SpectralGrid(wt / 10, 10 * wt, 1024));
    for (double v : rec.reconstructed) CHECK(v == 0.0);
  }

  SUBCASE("constant lossy index stays away from zero at any resolution") {
    const double r1 = kk_residual(qbtest::silica_lossy(),
                                  SpectralGrid(wt / 10, 10 * wt, 1024));
    const double r2 = kk_residual(qbtest::silica_lossy(),
                                  SpectralGrid(wt / 10, 10 * wt, 4096));
    CHECK(r1 > 0.05);
    CHECK(r2 > 0.05);
  }

  SUBCASE("grid must span [omega_c/10, 10 omega_c]") {
    CHECK_THROWS_AS(kk_residual(lorentz, SpectralGrid(wt / 2, 2 * wt, 1024)),
                    std::invalid_argument);
  }
}
