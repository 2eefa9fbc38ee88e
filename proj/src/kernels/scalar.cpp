#include "kernels/formulas.hpp"
#include "kernels/tables.hpp"

namespace ratlab::kernels {

namespace scalar {

void pair_map(const double* x, const double* y, std::size_t n, double alpha, double* w,
              double* z, std::uint8_t* region) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t r = formula::region(x[i], y[i], alpha);
    w[i] = formula::norm(x[i], y[i]);
    z[i] = r == kRegionMinus ? formula::branch_minus(x[i], y[i])
                             : formula::branch_plus(x[i], y[i]);
    region[i] = r;
  }
}

void pair_inverse(const double* w, const double* z, std::size_t n, double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) formula::inverse_plus(w[i], z[i], x[i], y[i]);
}

void pair_inverse_minus(const double* w, const double* z, std::size_t n, double* x,
                        double* y) {
  for (std::size_t i = 0; i < n; ++i) formula::inverse_minus(w[i], z[i], x[i], y[i]);
}

void pair_density(const double* w, const double* z, std::size_t n, double alpha, double scale,
                  Radicand radicand, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = formula::density(w[i], z[i], alpha, scale, radicand);
}

}  // namespace scalar

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, scalar::pair_map, scalar::pair_inverse,
                                 scalar::pair_inverse_minus, scalar::pair_density};
  return table;
}

}  // namespace ratlab::kernels
