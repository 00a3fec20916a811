#include "qbarrier/transfer.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qbarrier/constants.hpp"
#include "qbarrier/errors.hpp"

namespace qbarrier {

namespace {

constexpr double kPassivityTol = 1e-10;

struct AmbientIndices {
  complexd q_left;
  complexd q_right;
};

AmbientIndices ambient_indices(const LayerStack& stack, double omega) {
  return {index_at(stack.ambient_left(), omega).value(),
          index_at(stack.ambient_right(), omega).value()};
}

/// Hermitian PSD square root of I - T T^dagger with eigenvalue clamping.
Mat2c absorption_matrix(const Mat2c& t, double omega) {
  const Mat2c h = Mat2c::identity() - t * t.adjoint();
  const double a = h.m11.real();
  const double d = h.m22.real();
  const complexd b = h.m12;

  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  double lam1 = mean + radius;
  double lam2 = mean - radius;

  const auto clamp = [omega](double lam) {
    if (lam < -kPassivityTol) {
      throw NumericError(
          "scattering_matrices: I - T T^dagger has eigenvalue " +
          std::to_string(lam) + " < -1e-10 at omega = " +
          std::to_string(omega));
    }
    // kill roundoff dust on both sides so lossless stacks give A = 0
    return lam <= kPassivityTol ? 0.0 : lam;
  };
  lam1 = clamp(lam1);
  lam2 = clamp(lam2);

  const double s1 = std::sqrt(lam1);
  const double s2 = std::sqrt(lam2);

  if (std::abs(b) < 1e-300) {
    return {complexd(a >= d ? s1 : s2, 0.0), complexd(0.0, 0.0),
            complexd(0.0, 0.0), complexd(a >= d ? s2 : s1, 0.0)};
  }

  // eigenvector for lam1: (b, lam1 - a), normalized
  const complexd v1 = b;
  const complexd v2 = complexd(lam1 - a, 0.0);
  const double nrm2 = std::norm(v1) + std::norm(v2);
  const Mat2c p1{v1 * std::conj(v1) / nrm2, v1 * std::conj(v2) / nrm2,
                 v2 * std::conj(v1) / nrm2, v2 * std::conj(v2) / nrm2};
  const Mat2c p2 = Mat2c::identity() - p1;
  return complexd(s1, 0.0) * p1 + complexd(s2, 0.0) * p2;
}

}  // namespace

Mat2c layer_char_matrix(ComplexIndex index, double thickness, double omega) {
  if (!(thickness >= 0.0)) {
    throw std::invalid_argument("layer_char_matrix: thickness must be >= 0");
  }
  if (!(omega > 0.0)) {
    throw std::invalid_argument("layer_char_matrix: omega must be positive");
  }
  const complexd q = index.value();
  const complexd delta = q * omega * thickness / speed_of_light;
  const complexd c = std::cos(delta);
  const complexd s = std::sin(delta);
  const complexd i(0.0, 1.0);
  return {c, -i / q * s, -i * q * s, c};
}

Mat2c stack_char_matrix(const LayerStack& stack, double omega) {
  Mat2c m = Mat2c::identity();
  for (const auto& layer : stack.layers()) {
    m = m * layer_char_matrix(index_at(layer.material, omega), layer.thickness,
                              omega);
  }
  return m;
}

TransferAmplitudes stack_transfer(const LayerStack& stack, double omega) {
  const Mat2c m = stack_char_matrix(stack, omega);
  const auto [qa, qb] = ambient_indices(stack, omega);

  const complexd p = qa * (m.m11 + m.m12 * qb);
  const complexd q = m.m21 + m.m22 * qb;
  const complexd denom = p + q;
  if (std::abs(denom) < 1e-300) {
    throw NumericError("stack_transfer: vanishing denominator at omega = " +
                       std::to_string(omega));
  }

  TransferAmplitudes out;
  out.t_left = 2.0 * qa / denom;
  out.r_left = (p - q) / denom;
  // illumination from the right, same denominator by unimodularity
  out.t_right = 2.0 * qb / denom;
  out.r_right = (qb * (qa * m.m12 + m.m22) - (qa * m.m11 + m.m21)) / denom;
  return out;
}

ScatterMatrices scattering_matrices(const LayerStack& stack, double omega) {
  const TransferAmplitudes amp = stack_transfer(stack, omega);
  const auto [qa, qb] = ambient_indices(stack, omega);

  // flux normalization keeps rows of [T A] orthonormal for qa != qb;
  // ambients are lossless so the indices are real
  const double flux = std::sqrt(qb.real() / qa.real());

  ScatterMatrices sm;
  sm.omega = omega;
  sm.T = {amp.r_left, amp.t_right / flux, amp.t_left * flux, amp.r_right};
  sm.A = absorption_matrix(sm.T, omega);
  return sm;
}

std::vector<complexd> transmittance_scan(const LayerStack& stack,
                                         const SpectralGrid& grid) {
  std::vector<complexd> t12(static_cast<std::size_t>(grid.count()));
  for (int i = 0; i < grid.count(); ++i) {
    const double omega = grid.omega(i);
    const TransferAmplitudes amp = stack_transfer(stack, omega);
    const auto [qa, qb] = ambient_indices(stack, omega);
    t12[static_cast<std::size_t>(i)] =
        amp.t_right / std::sqrt(qb.real() / qa.real());
  }
  return t12;
}

}  // namespace qbarrier
