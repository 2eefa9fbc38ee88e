#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace ratlab {

using BigInt = mpz_class;
using BigRational = mpq_class;  // always canonical: lowest terms, den > 0

// Wraps a numerator/denominator pair that the caller knows to be coprime with
// den > 0. Skips the gcd, which dominates the cost of long orbits.
BigRational make_reduced(BigInt num, BigInt den);

// The exact binary value of a finite double.
BigRational exact_rational(double value);

// Nearest-double conversions that never overflow, whatever the operand size.
double to_double(const BigInt& value);
double to_double(const BigRational& value);

// Natural log of |value|, value != 0.
double log_abs(const BigInt& value);

BigInt floor_of(const BigRational& value);

// Closed interval [lo, hi] with exact rational endpoints, lo <= hi.
struct RationalInterval {
  BigRational lo;
  BigRational hi;

  RationalInterval() = default;
  RationalInterval(BigRational lo_, BigRational hi_);
  static RationalInterval point(const BigRational& value);
  // Interval hull of two values in either order.
  static RationalInterval hull(BigRational a, BigRational b);

  BigRational width() const { return hi - lo; }
  BigRational midpoint() const { return (lo + hi) / 2; }
  double midpoint_double() const;
  bool contains(const BigRational& value) const { return lo <= value && value <= hi; }
  bool overlaps(const RationalInterval& other) const {
    return lo <= other.hi && other.lo <= hi;
  }
};

// An element of Q ∪ {∞}, stored as a coprime pair with den >= 0 (den == 0 is ∞).
struct ProjectiveRational {
  BigInt num;
  BigInt den;

  static ProjectiveRational infinity();
  static ProjectiveRational from(const BigRational& value);
  static ProjectiveRational normalized(BigInt num, BigInt den);

  bool is_infinite() const { return sgn(den) == 0; }
  BigRational value() const;  // requires !is_infinite()
  friend bool operator==(const ProjectiveRational& a, const ProjectiveRational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

std::string to_string(const BigRational& value);

}  // namespace ratlab
