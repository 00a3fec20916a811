#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "qbarrier/grid.hpp"

namespace qbarrier {

using complexd = std::complex<double>;

/// Complex refractive index n = beta + i*gamma. beta sets the phase
/// velocity, gamma >= 0 the attenuation (time convention e^{-i omega t},
/// forward phase e^{+i beta omega x / c}).
struct ComplexIndex {
  double beta = 1.0;
  double gamma = 0.0;

  complexd value() const { return {beta, gamma}; }
};

/// Frequency-independent complex index (the "no reliable dispersion data"
/// regime: all frequency dependence comes from the barrier geometry).
struct ConstantIndex {
  ComplexIndex n;

  ConstantIndex() = default;
  explicit ConstantIndex(ComplexIndex index);
  ConstantIndex(double beta, double gamma);
};

/// Single-pole Lorentz oscillator,
/// eps(omega) = 1 + omega_p^2 / (omega_T^2 - omega^2 - i*damping*omega).
/// Causal by construction; serves as the Kramers-Kronig test fixture.
struct LorentzOscillator {
  double omega_T = 0.0;   ///< resonance (rad/s)
  double omega_p = 0.0;   ///< coupling strength (rad/s)
  double damping = 0.0;   ///< damping rate (rad/s)

  LorentzOscillator() = default;
  LorentzOscillator(double omega_T_, double omega_p_, double damping_);
};

using MaterialModel = std::variant<ConstantIndex, LorentzOscillator>;

/// Complex relative permittivity eps(omega). Requires omega > 0.
complexd permittivity_at(const MaterialModel& model, double omega);

/// Principal square root of eps with beta >= 0 and gamma >= 0 for passive
/// media. Rejects gain (Im eps < -1e-12).
ComplexIndex refractive_index(complexd epsilon);

/// Convenience: refractive_index(permittivity_at(model, omega)).
ComplexIndex index_at(const MaterialModel& model, double omega);

/// True when the model never absorbs (ConstantIndex with gamma == 0).
bool is_lossless(const MaterialModel& model);

/// Same model with absorption switched off (ConstantIndex: gamma -> 0;
/// LorentzOscillator has no lossless counterpart and is rejected).
MaterialModel lossless_of(const MaterialModel& model);

/// Frequency scale of the model's internal structure: omega_T for the
/// Lorentz oscillator, 0 for dispersion-free models.
double characteristic_frequency(const MaterialModel& model);

/// One finite layer: material plus geometric thickness in meters.
/// Zero thickness is allowed and acts as the identity.
struct Layer {
  MaterialModel material;
  double thickness = 0.0;
};

/// Ordered finite layers between two lossless semi-infinite ambients.
/// An empty layer list is the degenerate "no barrier" case.
class LayerStack {
 public:
  LayerStack();
  LayerStack(std::vector<Layer> layers, MaterialModel ambient_left,
             MaterialModel ambient_right);

  const std::vector<Layer>& layers() const { return layers_; }
  const MaterialModel& ambient_left() const { return ambient_left_; }
  const MaterialModel& ambient_right() const { return ambient_right_; }

  std::size_t layer_count() const { return layers_.size(); }
  bool empty() const { return layers_.empty(); }

  /// Total geometric thickness l = sum of layer thicknesses (meters).
  double total_thickness() const;

 private:
  std::vector<Layer> layers_;
  MaterialModel ambient_left_;
  MaterialModel ambient_right_;
};

/// H(LH)^k stack of quarter-wave layers between vacuum ambients:
/// k+1 high-index and k low-index layers, alternating, 2k+1 layers total.
/// Each thickness is pi*c / (2 * design_omega * beta(design_omega)),
/// i.e. an optical quarter wave using the real index part only.
LayerStack build_quarter_wave_stack(int k, const MaterialModel& high,
                                    const MaterialModel& low,
                                    double design_omega);

/// Kramers-Kronig diagnostic: eps_r - 1 reconstructed from eps_i by
/// principal-value quadrature over the grid, against the model's direct
/// values, on a fixed set of interior target frequencies.
struct KkReconstruction {
  std::vector<double> target_omegas;
  std::vector<double> reconstructed;  ///< (2/pi) PV integral of w' eps_i / (w'^2 - w^2)
  std::vector<double> direct;         ///< eps_r(omega) - 1 from the model
};

KkReconstruction kk_reconstruction(const MaterialModel& model,
                                   const SpectralGrid& grid);

/// Relative L2 mismatch between reconstructed and direct eps_r - 1.
/// For causal models this is pure quadrature error and shrinks with grid
/// refinement; for a constant lossy index it stays bounded away from zero.
double kk_residual(const MaterialModel& model, const SpectralGrid& grid);

}  // namespace qbarrier
