#include <immintrin.h>

#include "kernels/tables.hpp"

namespace ratlab::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d negate(__m256d v) { return _mm256_xor_pd(v, _mm256_set1_pd(-0.0)); }

void pair_map(const double* x, const double* y, std::size_t n, double alpha, double* w,
              double* z, std::uint8_t* region) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d d = _mm256_sub_pd(vx, vy);
    const __m256d vw = _mm256_div_pd(one, d);
    const __m256d plus = _mm256_div_pd(negate(_mm256_mul_pd(vx, vy)), d);
    const __m256d minus =
        _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(one, vx), _mm256_sub_pd(one, vy)), d);
    const __m256d nabla = _mm256_cmp_pd(vw, va, _CMP_GE_OQ);
    const __m256d bound = _mm256_div_pd(_mm256_mul_pd(va, vx), _mm256_sub_pd(va, vx));
    const __m256d is_minus =
        _mm256_andnot_pd(nabla, _mm256_and_pd(_mm256_cmp_pd(vx, va, _CMP_GT_OQ),
                                              _mm256_cmp_pd(vy, bound, _CMP_LE_OQ)));
    _mm256_storeu_pd(w + i, vw);
    _mm256_storeu_pd(z + i, _mm256_blendv_pd(plus, minus, is_minus));
    const int nm = _mm256_movemask_pd(nabla);
    const int mm = _mm256_movemask_pd(is_minus);
    for (std::size_t l = 0; l < kLanes; ++l) {
      region[i + l] = ((nm >> l) & 1) ? kRegionNabla : ((mm >> l) & 1) ? kRegionMinus : kRegionPlus;
    }
  }
  scalar::pair_map(x + i, y + i, n - i, alpha, w + i, z + i, region + i);
}

void pair_inverse(const double* w, const double* z, std::size_t n, double* x, double* y) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d s = _mm256_sqrt_pd(_mm256_sub_pd(one, _mm256_mul_pd(_mm256_mul_pd(four, vw), vz)));
    const __m256d t = _mm256_add_pd(one, s);
    _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_mul_pd(two, vz), t));
    _mm256_storeu_pd(y + i, _mm256_div_pd(negate(t), _mm256_mul_pd(two, vw)));
  }
  scalar::pair_inverse(w + i, z + i, n - i, x + i, y + i);
}

void pair_inverse_minus(const double* w, const double* z, std::size_t n, double* x,
                        double* y) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d s = _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(_mm256_mul_pd(four, vw), vz)));
    const __m256d t = _mm256_add_pd(one, s);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(one, _mm256_div_pd(_mm256_mul_pd(two, vz), t)));
    _mm256_storeu_pd(y + i, _mm256_sub_pd(one, _mm256_div_pd(t, _mm256_mul_pd(two, vw))));
  }
  scalar::pair_inverse_minus(w + i, z + i, n - i, x + i, y + i);
}

void pair_density(const double* w, const double* z, std::size_t n, double alpha, double scale,
                  Radicand radicand, double* out) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d four_alpha = _mm256_set1_pd(4.0 * alpha);
  const __m256d kmul = radicand == Radicand::AlphaInRadical ? four_alpha : _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    __m256d inside = _mm256_and_pd(_mm256_cmp_pd(vw, zero, _CMP_GT_OQ),
                                   _mm256_cmp_pd(vz, zero, _CMP_GT_OQ));
    inside = _mm256_and_pd(inside, _mm256_cmp_pd(vw, va, _CMP_LT_OQ));
    inside = _mm256_and_pd(inside, _mm256_cmp_pd(vz, va, _CMP_LT_OQ));
    inside = _mm256_and_pd(inside, _mm256_cmp_pd(_mm256_add_pd(vw, vz), one, _CMP_LT_OQ));
    const __m256d r = _mm256_mul_pd(_mm256_mul_pd(kmul, vw), vz);
    const __m256d plus = _mm256_div_pd(vs, _mm256_sqrt_pd(_mm256_sub_pd(one, r)));
    const __m256d both =
        _mm256_add_pd(plus, _mm256_div_pd(vs, _mm256_sqrt_pd(_mm256_add_pd(one, r))));
    const __m256d t = _mm256_sub_pd(one, _mm256_mul_pd(four_alpha, vw));
    const __m256d bound = _mm256_add_pd(_mm256_sub_pd(vw, va), _mm256_sqrt_pd(t));
    const __m256d is_minus = _mm256_and_pd(_mm256_cmp_pd(t, zero, _CMP_GE_OQ),
                                           _mm256_cmp_pd(vz, bound, _CMP_LT_OQ));
    const __m256d value = _mm256_blendv_pd(plus, both, is_minus);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(zero, value, inside));
  }
  scalar::pair_density(w + i, z + i, n - i, alpha, scale, radicand, out + i);
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{Isa::Avx2, pair_map, pair_inverse, pair_inverse_minus,
                                 pair_density};
  return table;
}

}  // namespace ratlab::kernels
