#pragma once

#include <cstddef>
#include <optional>

#include "ratlab/arith.hpp"
#include "ratlab/certified_real.hpp"
#include "ratlab/cf.hpp"

namespace ratlab {

// A point (x, y) of Omega = (0,1) x (-inf, -1), or a start point (x, inf).
// x is an exact enclosure; y is exact. y = -1 is admitted only for the image
// of a start point with a_1 = 1.
class NEPoint {
 public:
  // Requires 0 < x.lo, x.hi < 1 and y < -1.
  NEPoint(RationalInterval x, BigRational y);

  static NEPoint at_infinity(RationalInterval x);
  static NEPoint at_infinity(const CertifiedReal& x) { return at_infinity(x.interval()); }

  const RationalInterval& x() const { return x_; }
  bool y_is_infinite() const { return !y_.has_value(); }
  const BigRational& y() const;

 private:
  struct Unchecked {};
  NEPoint(RationalInterval x, std::optional<BigRational> y, Unchecked);

  RationalInterval x_;
  std::optional<BigRational> y_;

  friend NEPoint step(const NEPoint&);
  friend NEPoint step_from_infinity(const CertifiedReal&);
  friend NEPoint inverse_step(const NEPoint&);
  friend void step_in_place(NEPoint&, std::size_t);
};

// Integer matrix (a b; c d) acting as z -> (a z + b)/(c z + d).
struct MobiusMap {
  BigInt a, b, c, d;

  BigInt determinant() const { return a * d - b * c; }
  ProjectiveRational apply(const ProjectiveRational& z) const;
  // Requires the pole -d/c to lie outside the interval.
  RationalInterval apply(const RationalInterval& x) const;
};

// Certified partial quotient floor(1/x) of an interval: both endpoints must lie
// strictly inside the same cylinder (1/(a+1), 1/a).
std::optional<BigInt> certified_quotient(const RationalInterval& x);

// T(x, y) = (1/x - a, 1/y - a), a = floor(1/x). A start point (x, inf) maps to
// (1/x - a, -a).
NEPoint step(const NEPoint& p);
// Same map, reusing p's storage. `index` is reported in PrecisionExhausted.
void step_in_place(NEPoint& p, std::size_t index = 0);
NEPoint step_from_infinity(const CertifiedReal& x);

// Inverse branch chosen by the past digit a = floor(-y):
// (x, y) -> (1/(x + a), 1/(y + a)). Throws IntegerYBoundary for integer y.
NEPoint inverse_step(const NEPoint& p);

// (q_{n+1}, -p_{n+1}; -q_n, p_n): the action of T^{n+1} on the depth-(n+1)
// cylinder, on both coordinates.
MobiusMap mobius_of_prefix(const CFExpansion& cf, std::size_t n);
NEPoint apply(const MobiusMap& m, const NEPoint& p);

// ||(x, y)|| = 1/(x - y) as an exact enclosure; y finite.
RationalInterval norm(const NEPoint& p);

// mu(Omega_alpha) for the invariant measure (log 2)^-1 (x - y)^-2 dA.
double mu_omega_alpha(double alpha);

}  // namespace ratlab
