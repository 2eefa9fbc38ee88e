#pragma once

// Scalar pair-map formulas shared by the single-point API and the scalar
// kernels. The AVX2 kernels replay exactly these operations, in this order.

#include <cmath>
#include <cstdint>

#include "ratlab/kernels.hpp"

namespace ratlab::kernels::formula {

inline double norm(double x, double y) { return 1.0 / (x - y); }

inline double branch_plus(double x, double y) { return -(x * y) / (x - y); }

inline double branch_minus(double x, double y) { return ((1.0 - x) * (1.0 - y)) / (x - y); }

inline std::uint8_t region(double x, double y, double alpha) {
  if (norm(x, y) >= alpha) return kRegionNabla;
  if (x > alpha && y <= (alpha * x) / (alpha - x)) return kRegionMinus;
  return kRegionPlus;
}

// Inverse of the plus branch, in cancellation-free form:
// x = (1 - s)/(2w) = 2z/(1 + s), y = -(1 + s)/(2w), s = sqrt(1 - 4wz).
inline void inverse_plus(double w, double z, double& x, double& y) {
  const double s = std::sqrt(1.0 - (4.0 * w) * z);
  const double t = 1.0 + s;
  x = (2.0 * z) / t;
  y = -t / (2.0 * w);
}

// Inverse of the minus branch: x = 1 - 2z/(1 + s), y = 1 - (1 + s)/(2w),
// s = sqrt(1 + 4wz).
inline void inverse_minus(double w, double z, double& x, double& y) {
  const double s = std::sqrt(1.0 + (4.0 * w) * z);
  const double t = 1.0 + s;
  x = 1.0 - (2.0 * z) / t;
  y = 1.0 - t / (2.0 * w);
}

inline bool in_lambda(double w, double z, double alpha) {
  return w > 0.0 && z > 0.0 && w < alpha && z < alpha && w + z < 1.0;
}

// Minus iff 1 - 4 alpha w >= 0 and z < w - alpha + sqrt(1 - 4 alpha w).
inline bool lambda_minus(double w, double z, double alpha) {
  const double t = 1.0 - (4.0 * alpha) * w;
  if (!(t >= 0.0)) return false;
  return z < (w - alpha) + std::sqrt(t);
}

inline double density(double w, double z, double alpha, double scale, Radicand radicand) {
  if (!in_lambda(w, z, alpha)) return 0.0;
  const double k = radicand == Radicand::AlphaInRadical ? (4.0 * alpha) * w : 4.0 * w;
  const double r = k * z;
  double value = scale / std::sqrt(1.0 - r);
  if (lambda_minus(w, z, alpha)) value = value + scale / std::sqrt(1.0 + r);
  return value;
}

}  // namespace ratlab::kernels::formula
