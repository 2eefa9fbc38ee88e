#pragma once

#include "ratlab/kernels.hpp"

namespace ratlab::kernels {

namespace scalar {
void pair_map(const double* x, const double* y, std::size_t n, double alpha, double* w,
              double* z, std::uint8_t* region);
void pair_inverse(const double* w, const double* z, std::size_t n, double* x, double* y);
void pair_inverse_minus(const double* w, const double* z, std::size_t n, double* x, double* y);
void pair_density(const double* w, const double* z, std::size_t n, double alpha, double scale,
                  Radicand radicand, double* out);
}  // namespace scalar

#if defined(RATLAB_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

}  // namespace ratlab::kernels
