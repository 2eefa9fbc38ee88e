#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ratlab/arith.hpp"
#include "ratlab/cf.hpp"
#include "ratlab/first_return.hpp"
#include "ratlab/natural_extension.hpp"

namespace ratlab {

// Ford disc D_{p/q}(kappa): radius kappa/q^2, tangent to R at p/q (open).
struct Disc {
  BigInt p;
  BigInt q;
  BigRational kappa;

  BigRational tangent() const { return BigRational(p, q); }
  BigRational radius() const { return kappa / (q * q); }
};

// D_inf(kappa) = {Im > height}, height = 1/(2 kappa). This is the image of the
// kappa/q^2 discs under the integral Mobius maps that send p/q to infinity.
struct HalfPlane {
  BigRational height;

  BigRational kappa() const { return 1 / (2 * height); }
};

using Horocycle = std::variant<Disc, HalfPlane>;

// Half-circle orthogonal to R with real endpoints left < right.
struct Semicircle {
  BigRational left;
  BigRational right;
};

// Vertical half-line from `foot` to infinity.
struct Vertical {
  BigRational foot;
};

using Geodesic = std::variant<Semicircle, Vertical>;

// Requires a != b.
Geodesic geodesic_between(const ProjectiveRational& a, const ProjectiveRational& b);

// Throws NotReduced unless gcd(p, q) = 1, and InvalidArgument unless q >= 1
// and 0 < kappa <= 1.
Disc ford_disc(const BigInt& p, const BigInt& q, const BigRational& kappa);
HalfPlane horocycle_at_infinity(const BigRational& kappa);

// Exact: the open horodisc meets the geodesic. Squared-distance comparisons on
// rationals only.
bool intersects(const Geodesic& g, const Horocycle& h);

// The geodesic from y to a certified x in [x.lo, x.hi], y < x.lo. True or false
// only when the answer holds for every x in the interval; otherwise throws
// StraddlesThreshold.
bool intersects(const RationalInterval& x, const BigRational& y, const Horocycle& h);

// Action of the extended map (z -> m(z), conjugated when det m = -1) on the
// upper half-plane. Discs go to discs of the same kappa, or to the half-plane
// when the tangency point is sent to infinity.
Horocycle mobius_image(const MobiusMap& m, const Horocycle& h);
Geodesic mobius_image(const MobiusMap& m, const Geodesic& g);

// Geodesic from y to x meets D_{p_n/q_n}(alpha). Contractually equal to
// ||T^{n+1}(x, y)|| < alpha.
bool geometric_theta_test(const CFExpansion& cf, std::size_t n, const BigRational& y,
                          const Alpha& alpha);

struct MinimalDisc {
  std::size_t n;  // convergent index
  Disc disc;
};

inline constexpr std::size_t kDefaultDiscCap = 50;

// Scans D_{p_n/q_n}(alpha) for n = 0, 1, ... (convergents of p.x) and returns
// the first one meeting the geodesic from p.y to p.x. Denominators increase
// along the scan except q_0 = q_1 = 1, where 0/1 is tried first. Throws
// NoIntersectingDiscWithinCap.
MinimalDisc minimal_disc(const NEPoint& p, const Alpha& alpha,
                         std::size_t cap = kDefaultDiscCap);

// Return time read off the minimal disc: 1 for D_0, 2 for D_1, and n+1 or n+2
// by parity of n and the side of p_n/q_n on which x lies otherwise.
std::size_t geometric_tau(const NEPoint& p, const Alpha& alpha,
                          std::size_t cap = kDefaultDiscCap);

// All n in 1..N with ||T^n(x_0, y_0)|| < alpha, where (x_0, y_0) = T(x, y) and
// y = nullopt means the start point (x, inf).
std::vector<std::size_t> finite_return_scan(const CFExpansion& cf,
                                            const std::optional<BigRational>& y,
                                            const Alpha& alpha, std::size_t N);

}  // namespace ratlab
