#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "ratlab/arith.hpp"

namespace ratlab {

// An irrational in (0,1), known only through an exact enclosing interval.
// Every downstream statement is certified for every point of [lo, hi], or the
// operation fails.
class CertifiedReal {
 public:
  // Requires 0 < lo < hi < 1.
  static CertifiedReal from_interval(BigRational lo, BigRational hi);

  // Parses "ddd.ddddd" (ASCII digits, one '.', no sign or exponent). The
  // integer part is dropped: only the fractional part enters, enclosed by the
  // interval [f, f + 10^-d] for d fractional digits.
  static CertifiedReal from_decimal(std::string_view text);

  // Reads a decimal literal from a file; lines starting with '#' are comments.
  static CertifiedReal from_decimal_file(const std::filesystem::path& path);

  const BigRational& lo() const { return interval_.lo; }
  const BigRational& hi() const { return interval_.hi; }
  const RationalInterval& interval() const { return interval_; }

  // floor(-log2(hi - lo)); exactly the requested width for sampled reals.
  unsigned bits() const { return bits_; }

  double midpoint_double() const { return interval_.midpoint_double(); }

 private:
  CertifiedReal(RationalInterval interval);

  RationalInterval interval_;
  unsigned bits_ = 0;
};

// [p/2^bits, (p+1)/2^bits] with p uniform on {1, ..., 2^bits - 2}.
//
// The generator is std::mt19937_64 seeded with `seed`. Successive 64-bit
// outputs fill p from the most significant end, the last word truncated to its
// top bits, so a larger `bits` refines the leading digits of a smaller one.
// Draws of p = 0 or p = 2^bits - 1 are rejected and redrawn.
CertifiedReal sample_irrational(std::uint64_t seed, unsigned bits);

// Dyadic enclosure of (sqrt(5) - 1) / 2 of width 2^-bits, from an exact
// integer square root.
CertifiedReal golden_ratio_conjugate(unsigned bits);

}  // namespace ratlab
