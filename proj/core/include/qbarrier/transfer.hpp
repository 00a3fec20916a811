#pragma once

#include <complex>
#include <vector>

#include "qbarrier/grid.hpp"
#include "qbarrier/mat2.hpp"
#include "qbarrier/materials.hpp"

namespace qbarrier {

/// Characteristic matrix of a single homogeneous layer at normal
/// incidence: with delta = n*omega*d/c and q = n,
///   [[cos d, -(i/q) sin d], [-i q sin d, cos d]].
/// Unimodular for any n; thickness 0 gives the identity.
Mat2c layer_char_matrix(ComplexIndex index, double thickness, double omega);

/// Product of per-layer characteristic matrices in spatial order.
Mat2c stack_char_matrix(const LayerStack& stack, double omega);

/// Field amplitudes referenced face to face (entrance plane to exit
/// plane), for illumination from either side.
struct TransferAmplitudes {
  complexd r_left;   ///< reflection, illumination from the left
  complexd t_left;   ///< transmission, left to right
  complexd r_right;  ///< reflection, illumination from the right
  complexd t_right;  ///< transmission, right to left
};

TransferAmplitudes stack_transfer(const LayerStack& stack, double omega);

/// Input-output matrices at one frequency. T maps incoming to outgoing
/// mode amplitudes, A couples in the noise modes required by absorption:
///   T11 = r_left, T12 = t (right to left), T21 = t (left to right),
///   T22 = r_right, with transmissions flux-normalized so the rows of
///   the block [T A] are orthonormal also for unequal ambient indices.
/// A is the principal PSD square root of I - T T^dagger.
struct ScatterMatrices {
  Mat2c T;
  Mat2c A;
  double omega = 0.0;
};

/// Eigenvalues of I - T T^dagger below -1e-10 signal gain or an
/// implementation error and raise NumericError; values in [-1e-10, 0)
/// are clamped to zero.
ScatterMatrices scattering_matrices(const LayerStack& stack, double omega);

/// T12(omega) sampled over the grid (right-to-left transmission,
/// flux-normalized; equals T21 by reciprocity).
std::vector<complexd> transmittance_scan(const LayerStack& stack,
                                         const SpectralGrid& grid);

}  // namespace qbarrier
