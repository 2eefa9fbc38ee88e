#include "ratlab/first_return.hpp"

#include <cmath>
#include <string>

#include "ratlab/error.hpp"

namespace ratlab {

namespace {

[[noreturn]] void straddle(std::string_view what, std::size_t index) {
  throw Error(ErrorKind::StraddlesThreshold,
              std::string(what) + " cannot be certified at index " + std::to_string(index),
              index);
}

// Relative slack on double comparisons before falling back to exact ones.
// The doubles carry a few ulps of error at most.
constexpr double kFilterSlack = 1e-12;

void check_alpha(double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  }
}

}  // namespace

Alpha::Alpha(double value)
    : value_(value), exact_((check_alpha(value), exact_rational(value))),
      reciprocal_(1 / exact_), reciprocal_double_(to_double(reciprocal_)) {}

Alpha::Alpha(BigRational value)
    : value_(to_double(value)), exact_(std::move(value)) {
  if (!(sgn(exact_) > 0 && exact_ <= 1)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  }
  reciprocal_ = 1 / exact_;
  reciprocal_double_ = to_double(reciprocal_);
}

bool norm_below(const NEPoint& p, const Alpha& alpha, std::size_t index) {
  // ||p|| < alpha  <=>  x - y > 1/alpha.
  const BigRational& y = p.y();
  const double y_d = to_double(y);
  const double inv = alpha.reciprocal_double_;
  const double slack = kFilterSlack * inv;

  const double s_lo = to_double(p.x().lo) - y_d;
  bool lo_above;
  if (s_lo > inv + slack) {
    lo_above = true;
  } else if (s_lo < inv - slack) {
    lo_above = false;
  } else {
    lo_above = BigRational(p.x().lo - y) > alpha.reciprocal();
  }
  if (lo_above) return true;

  const double s_hi = to_double(p.x().hi) - y_d;
  bool hi_at_or_below;
  if (s_hi < inv - slack) {
    hi_at_or_below = true;
  } else if (s_hi > inv + slack) {
    hi_at_or_below = false;
  } else {
    hi_at_or_below = BigRational(p.x().hi - y) <= alpha.reciprocal();
  }
  if (hi_at_or_below) return false;
  straddle("||p|| < alpha", index);
}

bool in_omega_alpha(const NEPoint& p, const Alpha& alpha) { return norm_below(p, alpha); }

ReturnOutcome tau(const NEPoint& p, const Alpha& alpha, std::size_t cap) {
  NEPoint q = p;
  for (std::size_t n = 1; n <= cap; ++n) {
    step_in_place(q, n);
    if (norm_below(q, alpha, n)) return Returned{n, std::move(q)};
  }
  return NoReturnWithinCap{cap};
}

NEPoint return_map(const NEPoint& p, const Alpha& alpha, std::size_t cap) {
  auto outcome = tau(p, alpha, cap);
  if (auto* r = std::get_if<Returned>(&outcome)) return std::move(r->point);
  throw Error(ErrorKind::NoReturnWithinCap,
              "return_map: no return within " + std::to_string(cap) + " steps", cap);
}

ThetaBarSequence theta_bar(const CFExpansion& cf, const Alpha& alpha, std::size_t count) {
  ThetaBarSequence out{alpha.value(), {}};
  out.entries.reserve(count);
  if (count == 0) return out;

  const auto& src = cf.source();
  // T^n(x_0, y_0) consumes n + 1 quotients.
  const std::size_t n_limit = cf.length() == 0 ? 0 : cf.length() - 1;

  NEPoint orbit = step_from_infinity(src);
  std::size_t orbit_n = 0;

  for (std::size_t n = 1; n <= n_limit && out.entries.size() < count; ++n) {
    const auto& c = cf.convergent(n);
    auto theta_of = [&](const BigRational& v) -> BigRational { return c.q * abs(c.q * v - c.p); };
    RationalInterval theta = RationalInterval::hull(theta_of(src.lo()), theta_of(src.hi()));
    if (theta.lo >= alpha.exact()) continue;
    if (!(theta.hi < alpha.exact())) straddle("theta_n < alpha", n);

    // Return-orbit side: the next visit to Omega_alpha must land at this n.
    auto outcome = tau(orbit, alpha, n - orbit_n);
    auto* landed = std::get_if<Returned>(&outcome);
    if (landed == nullptr || orbit_n + landed->tau != n) {
      throw Error(ErrorKind::DomainViolation,
                  "theta_bar: return orbit disagrees with the filtered sequence", n);
    }
    orbit = std::move(landed->point);
    orbit_n = n;
    if (!norm(orbit).overlaps(theta)) {
      throw Error(ErrorKind::DomainViolation,
                  "theta_bar: ||T_alpha^k(x_0, y_0)|| does not enclose theta_{n_k}", n);
    }
    out.entries.push_back({out.entries.size() + 1, n, std::move(theta), c.q});
  }
  if (out.entries.size() < count) {
    throw Error(ErrorKind::PrecisionExhausted,
                "theta_bar: expansion certified only " + std::to_string(out.entries.size()) +
                    " of " + std::to_string(count) + " terms",
                n_limit + 1);
  }
  return out;
}

Region classify_region(const NEPoint& p, const Alpha& alpha) {
  if (alpha.value() < 0.5) {
    throw Error(ErrorKind::InvalidArgument, "classify_region requires alpha >= 1/2");
  }
  if (!norm_below(p, alpha)) return Region::Nabla;
  const BigRational& a = alpha.exact();
  const auto& x = p.x();
  if (x.hi <= a) return Region::OmegaPlus;
  if (!(x.lo > a)) straddle("x > alpha", 0);
  // y <= alpha x/(alpha - x); the bound increases with x on (alpha, 1).
  auto bound = [&](const BigRational& v) -> BigRational { return a * v / (a - v); };
  const BigRational& y = p.y();
  if (y <= bound(x.lo)) return Region::OmegaMinus;
  if (y > bound(x.hi)) return Region::OmegaPlus;
  straddle("y <= alpha x/(alpha - x)", 0);
}

Region classify_region(double x, double y, double alpha) {
  if (1.0 / (x - y) >= alpha) return Region::Nabla;
  if (x > alpha && y <= alpha * x / (alpha - x)) return Region::OmegaMinus;
  return Region::OmegaPlus;
}

double return_ratio(const CFExpansion& cf, const Alpha& alpha, std::size_t k_max) {
  const auto seq = theta_bar(cf, alpha, k_max);
  return static_cast<double>(k_max) / static_cast<double>(seq.entries.back().n);
}

}  // namespace ratlab
