#pragma once

#include <cstddef>
#include <vector>

#include "ratlab/certified_real.hpp"
#include "ratlab/first_return.hpp"
#include "ratlab/natural_extension.hpp"

namespace ratlab {

// One visit of the orbit T^n(x_0, y_0) to Omega_alpha, i.e. one term of the
// subsequence theta_bar.
struct ReturnSample {
  std::size_t k = 0;       // return count, 1-based
  std::size_t n = 0;       // plain-orbit index n_k
  double theta_lo = 0.0;   // nearest doubles to the exact enclosure of theta_{n_k}
  double theta_hi = 0.0;
  double log_q = 0.0;      // log q_{n_k}
  double x = 0.0;          // midpoint of the landed x, and the landed y
  double y = 0.0;

  double theta() const { return 0.5 * (theta_lo + theta_hi); }
};

// Streams the return orbit of (x_0, y_0) = T(x, inf) under T_alpha without
// storing convergents. Memory stays proportional to the working precision,
// which is what makes 10^4-term runs on 10^5-bit inputs cheap.
//
// q_{n} is read off the landed point: y_n = -q_{n+1}/q_n in lowest terms.
class ReturnWalker {
 public:
  ReturnWalker(const CertifiedReal& x, const Alpha& alpha,
               std::size_t cap = kDefaultReturnCap);

  // Advances to the next return. Throws PrecisionExhausted, StraddlesThreshold
  // (both tagged with the plain-orbit index) or NoReturnWithinCap.
  const ReturnSample& next();

  const ReturnSample& current() const { return sample_; }
  const NEPoint& point() const { return point_; }
  std::size_t steps() const { return n_; }

 private:
  Alpha alpha_;
  std::size_t cap_;
  NEPoint point_;
  std::size_t n_ = 0;
  ReturnSample sample_;
};

std::vector<ReturnSample> collect_returns(const CertifiedReal& x, const Alpha& alpha,
                                          std::size_t count,
                                          std::size_t cap = kDefaultReturnCap);

// Working precision that comfortably certifies `count` returns at threshold
// alpha for a typical x: about 2 log2 q_n ~ 3.42 n bits are consumed per n.
unsigned bits_for_returns(double alpha, std::size_t count);

}  // namespace ratlab
