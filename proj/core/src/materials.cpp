#include "qbarrier/materials.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qbarrier/constants.hpp"

namespace qbarrier {

namespace {

constexpr double kGainTolerance = 1e-12;

void check_passive(const ComplexIndex& n, const char* what) {
  if (!(n.beta > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": beta must be positive");
  }
  if (n.gamma < 0.0) {
    throw std::invalid_argument(std::string(what) + ": gamma must be >= 0");
  }
}

}  // namespace

ConstantIndex::ConstantIndex(ComplexIndex index) : n(index) {
  check_passive(n, "ConstantIndex");
}

ConstantIndex::ConstantIndex(double beta, double gamma)
    : ConstantIndex(ComplexIndex{beta, gamma}) {}

LorentzOscillator::LorentzOscillator(double omega_T_, double omega_p_,
                                     double damping_)
    : omega_T(omega_T_), omega_p(omega_p_), damping(damping_) {
  if (!(omega_T > 0.0) || !(omega_p > 0.0) || !(damping > 0.0)) {
    throw std::invalid_argument(
        "LorentzOscillator: parameters must be strictly positive");
  }
}

complexd permittivity_at(const MaterialModel& model, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("permittivity_at: omega must be positive");
  }
  if (const auto* c = std::get_if<ConstantIndex>(&model)) {
    const complexd n = c->n.value();
    return n * n;
  }
  const auto& lo = std::get<LorentzOscillator>(model);
  const complexd denom(lo.omega_T * lo.omega_T - omega * omega,
                       -lo.damping * omega);
  return 1.0 + lo.omega_p * lo.omega_p / denom;
}

ComplexIndex refractive_index(complexd epsilon) {
  if (epsilon.imag() < -kGainTolerance) {
    throw std::invalid_argument(
        "refractive_index: gain medium (Im eps < 0) rejected");
  }
  if (epsilon.imag() < 0.0) {
    // within tolerance of passive; snap onto the passive branch cut side
    epsilon = complexd(epsilon.real(), 0.0);
  }
  const complexd n = std::sqrt(epsilon);
  return {n.real(), n.imag()};
}

ComplexIndex index_at(const MaterialModel& model, double omega) {
  return refractive_index(permittivity_at(model, omega));
}

bool is_lossless(const MaterialModel& model) {
  if (const auto* c = std::get_if<ConstantIndex>(&model)) {
    return c->n.gamma == 0.0;
  }
  return false;
}

MaterialModel lossless_of(const MaterialModel& model) {
  if (const auto* c = std::get_if<ConstantIndex>(&model)) {
    return ConstantIndex(c->n.beta, 0.0);
  }
  throw std::invalid_argument(
      "lossless_of: only ConstantIndex has a lossless counterpart");
}

double characteristic_frequency(const MaterialModel& model) {
  if (const auto* lo = std::get_if<LorentzOscillator>(&model)) {
    return lo->omega_T;
  }
  return 0.0;
}

LayerStack::LayerStack()
    : ambient_left_(ConstantIndex(1.0, 0.0)),
      ambient_right_(ConstantIndex(1.0, 0.0)) {}

LayerStack::LayerStack(std::vector<Layer> layers, MaterialModel ambient_left,
                       MaterialModel ambient_right)
    : layers_(std::move(layers)),
      ambient_left_(std::move(ambient_left)),
      ambient_right_(std::move(ambient_right)) {
  for (const auto& layer : layers_) {
    if (!(layer.thickness >= 0.0)) {
      throw std::invalid_argument("LayerStack: layer thickness must be >= 0");
    }
  }
  if (!is_lossless(ambient_left_) || !is_lossless(ambient_right_)) {
    throw std::invalid_argument("LayerStack: ambients must be lossless");
  }
}

double LayerStack::total_thickness() const {
  double l = 0.0;
  for (const auto& layer : layers_) l += layer.thickness;
  return l;
}

LayerStack build_quarter_wave_stack(int k, const MaterialModel& high,
                                    const MaterialModel& low,
                                    double design_omega) {
  if (k < 1) {
    throw std::invalid_argument("build_quarter_wave_stack: k must be >= 1");
  }
  if (!(design_omega > 0.0)) {
    throw std::invalid_argument(
        "build_quarter_wave_stack: design_omega must be positive");
  }
  const auto quarter_wave = [design_omega](const MaterialModel& m) {
    const double beta = index_at(m, design_omega).beta;
    return std::numbers::pi * speed_of_light / (2.0 * design_omega * beta);
  };
  const double d_high = quarter_wave(high);
  const double d_low = quarter_wave(low);

  std::vector<Layer> layers;
  layers.reserve(static_cast<std::size_t>(2 * k + 1));
  layers.push_back({high, d_high});
  for (int i = 0; i < k; ++i) {
    layers.push_back({low, d_low});
    layers.push_back({high, d_high});
  }
  return LayerStack(std::move(layers), ConstantIndex(1.0, 0.0),
                    ConstantIndex(1.0, 0.0));
}

namespace {

double imag_permittivity(const MaterialModel& model, double omega) {
  return permittivity_at(model, omega).imag();
}

}  // namespace

KkReconstruction kk_reconstruction(const MaterialModel& model,
                                   const SpectralGrid& grid) {
  const double omega_c = characteristic_frequency(model);
  if (omega_c > 0.0) {
    if (grid.omega_min() > omega_c / 10.0 || grid.omega_max() < 10.0 * omega_c) {
      throw std::invalid_argument(
          "kk_reconstruction: grid must span [omega_c/10, 10 omega_c]");
    }
  }
  const int count = grid.count();
  const double h = grid.spacing();

  // numerator f(w') = w' * eps_i(w') at the nodes
  std::vector<double> f(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double w = grid.omega(j);
    f[static_cast<std::size_t>(j)] = w * imag_permittivity(model, w);
  }

  // fixed interior target frequencies, snapped to the nearest node so the
  // singular cell is symmetric; refining the grid refines the quadrature
  // while the measured functional stays put
  const int n_targets = 257;
  const double lo = grid.omega_min() + 0.05 * grid.span();
  const double hi = grid.omega_max() - 0.05 * grid.span();

  KkReconstruction out;
  out.target_omegas.reserve(n_targets);
  out.reconstructed.reserve(n_targets);
  out.direct.reserve(n_targets);

  int last_k = -1;
  for (int t = 0; t < n_targets; ++t) {
    const double intended = lo + (hi - lo) * t / (n_targets - 1);
    const int k = static_cast<int>(
        std::lround((intended - grid.omega_min()) / h));
    if (k == last_k || k <= 0 || k >= count - 1) continue;
    last_k = k;
    const double wk = grid.omega(k);

    double sum = 0.0;
    for (int j = 0; j < count; ++j) {
      if (j == k) continue;
      const double wj = grid.omega(j);
      const double weight = (j == 0 || j == count - 1) ? 0.5 : 1.0;
      sum += weight * f[static_cast<std::size_t>(j)] / (wj * wj - wk * wk);
    }
    // principal value over the skipped cell: h * g'(wk), g = f/(w'+wk)
    const double gp = (imag_permittivity(model, wk + h) * (wk + h) /
                           (2.0 * wk + h) -
                       imag_permittivity(model, wk - h) * (wk - h) /
                           (2.0 * wk - h)) /
                      (2.0 * h);

    // close the truncated Hilbert tails with the causal asymptotics
    // eps_i ~ s1 w' (w' -> 0) and eps_i ~ c3 / w'^3 (w' -> inf), anchored
    // at the grid edges; keeps the quadrature error dominant under
    // refinement instead of a fixed truncation bias
    const double a = grid.omega_min();
    const double b = grid.omega_max();
    const double s1 = imag_permittivity(model, a) / a;
    const double c3 = b * b * b * imag_permittivity(model, b);
    const double lower_tail =
        s1 * (a + 0.5 * wk * std::log((wk - a) / (wk + a)));
    const double upper_tail =
        c3 / (wk * wk) *
        (0.5 / wk * std::log((b + wk) / (b - wk)) - 1.0 / b);

    const double recon = (2.0 / std::numbers::pi) *
                         (sum * h + h * gp + lower_tail + upper_tail);

    out.target_omegas.push_back(wk);
    out.reconstructed.push_back(recon);
    out.direct.push_back(permittivity_at(model, wk).real() - 1.0);
  }
  return out;
}

double kk_residual(const MaterialModel& model, const SpectralGrid& grid) {
  const KkReconstruction rec = kk_reconstruction(model, grid);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rec.target_omegas.size(); ++i) {
    const double d = rec.reconstructed[i] - rec.direct[i];
    num += d * d;
    den += rec.direct[i] * rec.direct[i];
  }
  if (den == 0.0) {
    throw std::invalid_argument(
        "kk_residual: model has eps_r == 1 everywhere, mismatch undefined");
  }
  return std::sqrt(num / den);
}

}  // namespace qbarrier
