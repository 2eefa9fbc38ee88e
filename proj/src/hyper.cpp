#include "ratlab/hyper.hpp"

#include <string>

#include "ratlab/error.hpp"

namespace ratlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Solution set in x of a conjunction of strict linear constraints k x > m: an
// open interval, possibly unbounded or empty.
class OpenSet {
 public:
  void require_greater(const BigRational& k, const BigRational& m) {
    const int s = sgn(k);
    if (s == 0) {
      if (!(0 > m)) empty_ = true;
      return;
    }
    const BigRational bound = m / k;
    if (s > 0) {
      if (!lo_ || bound > *lo_) lo_ = bound;
    } else {
      if (!hi_ || bound < *hi_) hi_ = bound;
    }
  }

  void require_between(const BigRational& a, const BigRational& b) {
    if (!lo_ || a > *lo_) lo_ = a;
    if (!hi_ || b < *hi_) hi_ = b;
  }

  bool empty() const { return empty_ || (lo_ && hi_ && *lo_ >= *hi_); }

  bool contains(const BigRational& x) const {
    return !empty() && (!lo_ || *lo_ < x) && (!hi_ || x < *hi_);
  }

  // True/false when the whole closed interval lies inside/outside; nullopt
  // otherwise.
  std::optional<bool> decide(const RationalInterval& x) const {
    if (empty()) return false;
    if ((!lo_ || *lo_ < x.lo) && (!hi_ || x.hi < *hi_)) return true;
    if ((lo_ && x.hi <= *lo_) || (hi_ && x.lo >= *hi_)) return false;
    return std::nullopt;
  }

 private:
  bool empty_ = false;
  std::optional<BigRational> lo_;
  std::optional<BigRational> hi_;
};

// Set of right endpoints x > y for which the geodesic from y to x (vertical at
// x when y is absent) meets the open horodisc h.
//
// Semicircle [y, x] against a disc at t of radius rho: with center c and
// radius r, d^2 - (r -/+ rho)^2 = (t - x)(t - y) +/- rho (x - y), so the
// intersection test is |(t - x)(t - y)| < rho (x - y), linear in x.
OpenSet right_endpoints_meeting(const std::optional<BigRational>& y, const Horocycle& h) {
  OpenSet set;
  std::visit(Overloaded{
                 [&](const Disc& d) {
                   const BigRational t = d.tangent();
                   const BigRational rho = d.radius();
                   if (!y) {
                     set.require_between(t - rho, t + rho);
                     return;
                   }
                   const BigRational u = t - *y;
                   set.require_greater(u + rho, u * t + rho * *y);
                   set.require_greater(rho - u, rho * *y - u * t);
                 },
                 [&](const HalfPlane& hp) {
                   if (y) set.require_greater(BigRational(1), *y + 2 * hp.height);
                 },
             },
             h);
  return set;
}

bool semicircle_meets(const BigRational& left, const BigRational& right, const Horocycle& h) {
  return right_endpoints_meeting(left, h).contains(right);
}

BigRational abs_value(const BigRational& v) { return sgn(v) < 0 ? BigRational(-v) : v; }

bool intersects_certified(const RationalInterval& x, const std::optional<BigRational>& y,
                          const Horocycle& h, std::size_t index) {
  if (y && !(*y < x.lo)) {
    throw Error(ErrorKind::InvalidArgument, "geodesic needs y < x");
  }
  const auto decided = right_endpoints_meeting(y, h).decide(x);
  if (!decided) {
    throw Error(ErrorKind::StraddlesThreshold,
                "horodisc tangency cannot be certified at this precision", index);
  }
  return *decided;
}

std::optional<BigRational> finite_y(const NEPoint& p) {
  if (p.y_is_infinite()) return std::nullopt;
  return p.y();
}

CFExpansion expansion_of(const RationalInterval& x, std::size_t terms) {
  return cf_expand(CertifiedReal::from_interval(x.lo, x.hi), terms);
}

}  // namespace

Geodesic geodesic_between(const ProjectiveRational& a, const ProjectiveRational& b) {
  if (a == b) throw Error(ErrorKind::InvalidArgument, "geodesic needs distinct endpoints");
  if (a.is_infinite()) return Vertical{b.value()};
  if (b.is_infinite()) return Vertical{a.value()};
  BigRational u = a.value(), v = b.value();
  if (u < v) return Semicircle{u, v};
  return Semicircle{v, u};
}

Disc ford_disc(const BigInt& p, const BigInt& q, const BigRational& kappa) {
  if (sgn(q) <= 0) throw Error(ErrorKind::InvalidArgument, "ford_disc: q must be >= 1");
  if (!(sgn(kappa) > 0 && kappa <= 1)) {
    throw Error(ErrorKind::InvalidArgument, "ford_disc: kappa must lie in (0, 1]");
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw Error(ErrorKind::NotReduced, "ford_disc: p/q is not in lowest terms");
  return Disc{p, q, kappa};
}

HalfPlane horocycle_at_infinity(const BigRational& kappa) {
  if (!(sgn(kappa) > 0 && kappa <= 1)) {
    throw Error(ErrorKind::InvalidArgument, "horocycle_at_infinity: kappa must lie in (0, 1]");
  }
  return HalfPlane{1 / (2 * kappa)};
}

bool intersects(const Geodesic& g, const Horocycle& h) {
  return std::visit(
      Overloaded{
          [&](const Semicircle& s) { return semicircle_meets(s.left, s.right, h); },
          [&](const Vertical& v) {
            return std::visit(Overloaded{[&](const Disc& d) {
                                           return abs_value(v.foot - d.tangent()) < d.radius();
                                         },
                                         [](const HalfPlane&) { return true; }},
                              h);
          },
      },
      g);
}

bool intersects(const RationalInterval& x, const BigRational& y, const Horocycle& h) {
  return intersects_certified(x, y, h, 0);
}

Horocycle mobius_image(const MobiusMap& m, const Horocycle& h) {
  const BigInt det = m.determinant();
  if (det != 1 && det != -1) {
    throw Error(ErrorKind::InvalidArgument, "mobius_image needs determinant +-1");
  }
  return std::visit(
      Overloaded{
          [&](const Disc& d) -> Horocycle {
            const auto image = m.apply(ProjectiveRational::normalized(d.p, d.q));
            if (image.is_infinite()) return HalfPlane{1 / (2 * d.kappa)};
            return Disc{image.num, image.den, d.kappa};
          },
          [&](const HalfPlane& hp) -> Horocycle {
            const auto image = m.apply(ProjectiveRational::infinity());
            if (image.is_infinite()) {
              // Integral maps fixing infinity are translations (and reflections).
              return hp;
            }
            return Disc{image.num, image.den, hp.kappa()};
          },
      },
      h);
}

Geodesic mobius_image(const MobiusMap& m, const Geodesic& g) {
  return std::visit(Overloaded{
                        [&](const Semicircle& s) {
                          return geodesic_between(m.apply(ProjectiveRational::from(s.left)),
                                                  m.apply(ProjectiveRational::from(s.right)));
                        },
                        [&](const Vertical& v) {
                          return geodesic_between(m.apply(ProjectiveRational::from(v.foot)),
                                                  m.apply(ProjectiveRational::infinity()));
                        },
                    },
                    g);
}

bool geometric_theta_test(const CFExpansion& cf, std::size_t n, const BigRational& y,
                          const Alpha& alpha) {
  if (n > cf.length()) {
    throw Error(ErrorKind::IndexBeyondCertified,
                "convergent " + std::to_string(n) + " is not certified", n);
  }
  const Convergent& c = cf.convergent(n);
  return intersects_certified(cf.source().interval(), y, ford_disc(c.p, c.q, alpha.exact()), n);
}

MinimalDisc minimal_disc(const NEPoint& p, const Alpha& alpha, std::size_t cap) {
  const CFExpansion cf = expansion_of(p.x(), cap + 1);
  const auto y = finite_y(p);
  for (std::size_t n = 0; n <= cap; ++n) {
    if (n > cf.length()) {
      throw Error(ErrorKind::PrecisionExhausted,
                  "convergent " + std::to_string(n) + " is not certified", n);
    }
    const Convergent& c = cf.convergent(n);
    Disc disc = ford_disc(c.p, c.q, alpha.exact());
    if (intersects_certified(p.x(), y, disc, n)) return MinimalDisc{n, std::move(disc)};
  }
  throw Error(ErrorKind::NoIntersectingDiscWithinCap,
              "no convergent horodisc within " + std::to_string(cap) + " terms", cap);
}

std::size_t geometric_tau(const NEPoint& p, const Alpha& alpha, std::size_t cap) {
  const MinimalDisc found = minimal_disc(p, alpha, cap);
  if (found.disc.q == 1) return found.disc.p == 0 ? 1 : 2;
  const BigRational t = found.disc.tangent();
  const RationalInterval& x = p.x();
  if (x.contains(t)) {
    throw Error(ErrorKind::StraddlesThreshold, "x is not separated from p_n/q_n", found.n);
  }
  const bool above = x.lo > t;
  const bool odd = found.n % 2 == 1;
  const bool near_side = odd ? !above : above;
  return near_side ? found.n + 1 : found.n + 2;
}

std::vector<std::size_t> finite_return_scan(const CFExpansion& cf,
                                            const std::optional<BigRational>& y,
                                            const Alpha& alpha, std::size_t N) {
  if (N > cf.length()) {
    throw Error(ErrorKind::IndexBeyondCertified,
                "scan to " + std::to_string(N) + " needs " + std::to_string(N) +
                    " certified quotients, have " + std::to_string(cf.length()),
                cf.length());
  }
  if (y && !(*y < -1)) throw Error(ErrorKind::DomainViolation, "finite_return_scan needs y < -1");
  std::vector<std::size_t> hits;
  for (std::size_t n = 1; n <= N; ++n) {
    const Convergent& c = cf.convergent(n);
    if (intersects_certified(cf.source().interval(), y, ford_disc(c.p, c.q, alpha.exact()), n)) {
      hits.push_back(n);
    }
  }
  return hits;
}

}  // namespace ratlab
