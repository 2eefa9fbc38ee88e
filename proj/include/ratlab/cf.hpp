#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ratlab/arith.hpp"
#include "ratlab/certified_real.hpp"

namespace ratlab {

struct Convergent {
  BigInt p;
  BigInt q;
};

// Certified prefix [a_1, ..., a_m] of the regular continued fraction shared by
// every point of the source interval, with convergents p_k/q_k for k = 0..m
// under the convention p_0/q_0 = 0/1.
class CFExpansion {
 public:
  CFExpansion(std::vector<BigInt> quotients, CertifiedReal source);

  // Number m of certified partial quotients.
  std::size_t length() const { return quotients_.size(); }

  // a_k, 1 <= k <= length().
  const BigInt& quotient(std::size_t k) const;
  // p_k/q_k, 0 <= k <= length().
  const Convergent& convergent(std::size_t k) const;

  const std::vector<BigInt>& quotients() const { return quotients_; }
  const CertifiedReal& source() const { return source_; }

 private:
  std::vector<BigInt> quotients_;
  std::vector<Convergent> convergents_;
  CertifiedReal source_;
};

// Runs the Gauss algorithm on both endpoints; keeps the common prefix, capped
// at max_terms. A quotient counts only when neither endpoint sits on the
// boundary of its cylinder. Throws PrecisionExhausted when nothing is
// certified.
CFExpansion cf_expand(const CertifiedReal& x, std::size_t max_terms);

// theta_n = q_n |q_n x - p_n| for n = 0..n_max as exact enclosures.
using ThetaSequence = std::vector<RationalInterval>;
ThetaSequence theta_seq(const CFExpansion& cf, std::size_t n_max);

// x_n = [a_{n+2}, a_{n+3}, ...] and y_n = -a_{n+1} - [a_n, ..., a_1].
struct TailReversal {
  RationalInterval x_n;
  BigRational y_n;
};
TailReversal tail_and_reversal(const CFExpansion& cf, std::size_t n);

// Endpoints p_{n+1}/q_{n+1} and (p_{n+1} + p_n)/(q_{n+1} + q_n) of the
// depth-(n+1) cylinder containing x.
std::pair<BigRational, BigRational> cylinder_interval(const CFExpansion& cf, std::size_t n);

}  // namespace ratlab
