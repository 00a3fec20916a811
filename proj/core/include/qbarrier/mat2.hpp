#pragma once

#include <complex>

namespace qbarrier {

using complexd = std::complex<double>;

/// Dense complex 2x2 matrix, row major.
struct Mat2c {
  complexd m11{0.0, 0.0};
  complexd m12{0.0, 0.0};
  complexd m21{0.0, 0.0};
  complexd m22{0.0, 0.0};

  static Mat2c identity() { return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }

  complexd det() const { return m11 * m22 - m12 * m21; }

  Mat2c adjoint() const {
    return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
  }
};

inline Mat2c operator*(const Mat2c& a, const Mat2c& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline Mat2c operator-(const Mat2c& a, const Mat2c& b) {
  return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

inline Mat2c operator+(const Mat2c& a, const Mat2c& b) {
  return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

inline Mat2c operator*(complexd s, const Mat2c& a) {
  return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
}

}  // namespace qbarrier
