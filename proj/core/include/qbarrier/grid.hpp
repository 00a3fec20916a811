#pragma once

#include <stdexcept>
#include <vector>

namespace qbarrier {

/// Uniform grid of strictly positive angular frequencies (rad/s),
/// endpoints inclusive. Sample counts are powers of two, at least 256,
/// so that spectral grids pair with conjugate time grids of equal size.
class SpectralGrid {
 public:
  SpectralGrid(double omega_min, double omega_max, int count)
      : omega_min_(omega_min), omega_max_(omega_max), count_(count) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min)) {
      throw std::invalid_argument(
          "SpectralGrid: require 0 < omega_min < omega_max");
    }
    if (count < 256 || (count & (count - 1)) != 0) {
      throw std::invalid_argument(
          "SpectralGrid: count must be a power of two >= 256");
    }
  }

  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  int count() const { return count_; }
  double span() const { return omega_max_ - omega_min_; }
  double spacing() const { return span() / (count_ - 1); }

  double omega(int i) const { return omega_min_ + i * spacing(); }

  std::vector<double> omegas() const {
    std::vector<double> w(static_cast<std::size_t>(count_));
    for (int i = 0; i < count_; ++i) w[static_cast<std::size_t>(i)] = omega(i);
    return w;
  }

  bool operator==(const SpectralGrid& other) const {
    return omega_min_ == other.omega_min_ && omega_max_ == other.omega_max_ &&
           count_ == other.count_;
  }

 private:
  double omega_min_;
  double omega_max_;
  int count_;
};

}  // namespace qbarrier
