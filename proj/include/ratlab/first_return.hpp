#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "ratlab/arith.hpp"
#include "ratlab/cf.hpp"
#include "ratlab/natural_extension.hpp"

namespace ratlab {

// Threshold alpha in (0, 1], held exactly (the binary value of the double it
// was built from) together with 1/alpha.
class Alpha {
 public:
  explicit Alpha(double value);
  explicit Alpha(BigRational value);

  double value() const { return value_; }
  const BigRational& exact() const { return exact_; }
  const BigRational& reciprocal() const { return reciprocal_; }

 private:
  double value_;
  BigRational exact_;
  BigRational reciprocal_;
  double reciprocal_double_;

  friend bool norm_below(const NEPoint&, const Alpha&, std::size_t);
};

// Certified ||p|| < alpha. Throws StraddlesThreshold (tagged with `index`)
// when the enclosure of ||p|| contains alpha in its interior.
bool norm_below(const NEPoint& p, const Alpha& alpha, std::size_t index = 0);

// Membership in Omega_alpha = {||p|| < alpha}.
bool in_omega_alpha(const NEPoint& p, const Alpha& alpha);

struct Returned {
  std::size_t tau;
  NEPoint point;
};
struct NoReturnWithinCap {
  std::size_t steps;
};
using ReturnOutcome = std::variant<Returned, NoReturnWithinCap>;

inline constexpr std::size_t kDefaultReturnCap = 10'000;

// tau_alpha(p) = min{n >= 1 : T^n p in Omega_alpha}. p may be a start point
// (x, inf).
ReturnOutcome tau(const NEPoint& p, const Alpha& alpha, std::size_t cap = kDefaultReturnCap);

// T_alpha(p) = T^tau(p). Throws NoReturnWithinCap when tau exceeds the cap.
NEPoint return_map(const NEPoint& p, const Alpha& alpha, std::size_t cap = kDefaultReturnCap);

struct ThetaBarEntry {
  std::size_t k;             // 1-based position in the subsequence
  std::size_t n;             // original index n_k >= 1
  RationalInterval theta;    // theta_{n_k}
  BigInt q;                  // q_{n_k}
};

struct ThetaBarSequence {
  double alpha;
  std::vector<ThetaBarEntry> entries;
};

// First `count` terms theta_{n_k} < alpha (n_k >= 1), by filtering theta_seq.
// Each term is cross-checked against ||T_alpha^k(x_0, y_0)|| on the return
// orbit; a disagreement throws DomainViolation.
ThetaBarSequence theta_bar(const CFExpansion& cf, const Alpha& alpha, std::size_t count);

enum class Region { OmegaPlus, OmegaMinus, Nabla };

// For 1/2 <= alpha <= 1: Nabla iff ||p|| >= alpha; OmegaMinus iff ||p|| < alpha,
// x > alpha and y <= alpha x/(alpha - x); OmegaPlus otherwise.
Region classify_region(const NEPoint& p, const Alpha& alpha);

// Plain double version of the same partition, for sampled (x, y).
Region classify_region(double x, double y, double alpha);

// k_max / n_{k_max}.
double return_ratio(const CFExpansion& cf, const Alpha& alpha, std::size_t k_max);

}  // namespace ratlab
