#pragma once

#include <gmpxx.h>

#include "ratlab/arith.hpp"
#include "ratlab/certified_real.hpp"
#include "ratlab/natural_extension.hpp"

namespace ratlab::testing {

// Dyadic interval of width 2^(1-bits) centred on the binary value of v.
inline CertifiedReal near(double v, unsigned bits = 200) {
  BigRational eps(1);
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), bits);
  const BigRational c = exact_rational(v);
  return CertifiedReal::from_interval(c - eps, c + eps);
}

inline BigRational q(long num, long den) {
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

inline NEPoint point(double x, const BigRational& y, unsigned bits = 200) {
  return NEPoint(near(x, bits).interval(), y);
}

inline double mid(const RationalInterval& r) { return r.midpoint_double(); }

}  // namespace ratlab::testing
