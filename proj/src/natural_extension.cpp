#include "ratlab/natural_extension.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ratlab/error.hpp"

namespace ratlab {

namespace {

mpz_ptr num_of(BigRational& r) { return mpq_numref(r.get_mpq_t()); }
mpz_ptr den_of(BigRational& r) { return mpq_denref(r.get_mpq_t()); }

bool inside_unit(const RationalInterval& x) { return sgn(x.lo) > 0 && x.hi < 1; }

// Gauss map on an endpoint known to lie in (1/(a+1), 1/a): num/den ->
// (den - a num)/num, which stays in lowest terms.
void gauss_endpoint(BigRational& v, mpz_srcptr a) {
  mpz_submul(den_of(v), a, num_of(v));  // den <- den - a num
  mpz_swap(den_of(v), num_of(v));        // (num, den) <- (den - a num, num)
}

// y -> 1/y - a for y = -N/D: gives -(D + a N)/N, again in lowest terms.
void reciprocal_shift(BigRational& y, mpz_srcptr a) {
  mpz_submul(den_of(y), a, num_of(y));  // den <- D + a N (num = -N)
  mpz_swap(den_of(y), num_of(y));        // num <- D + a N, den <- -N
  mpz_neg(num_of(y), num_of(y));
  mpz_neg(den_of(y), den_of(y));
}

}  // namespace

NEPoint::NEPoint(RationalInterval x, BigRational y) : x_(std::move(x)), y_(std::move(y)) {
  if (!inside_unit(x_)) throw Error(ErrorKind::DomainViolation, "NEPoint: x must lie in (0, 1)");
  if (!(*y_ < -1)) throw Error(ErrorKind::DomainViolation, "NEPoint: y must be < -1");
}

NEPoint::NEPoint(RationalInterval x, std::optional<BigRational> y, Unchecked)
    : x_(std::move(x)), y_(std::move(y)) {}

NEPoint NEPoint::at_infinity(RationalInterval x) {
  if (!inside_unit(x)) throw Error(ErrorKind::DomainViolation, "NEPoint: x must lie in (0, 1)");
  return NEPoint(std::move(x), std::nullopt, Unchecked{});
}

const BigRational& NEPoint::y() const {
  if (!y_) throw Error(ErrorKind::DomainViolation, "NEPoint: y is infinite");
  return *y_;
}

std::optional<BigInt> certified_quotient(const RationalInterval& x) {
  if (!inside_unit(x)) return std::nullopt;
  BigInt a_lo, r_lo, a_hi, r_hi;
  mpz_fdiv_qr(a_lo.get_mpz_t(), r_lo.get_mpz_t(), x.lo.get_den_mpz_t(), x.lo.get_num_mpz_t());
  mpz_fdiv_qr(a_hi.get_mpz_t(), r_hi.get_mpz_t(), x.hi.get_den_mpz_t(), x.hi.get_num_mpz_t());
  if (a_lo != a_hi || sgn(r_lo) == 0 || sgn(r_hi) == 0) return std::nullopt;
  return a_lo;
}

void step_in_place(NEPoint& p, std::size_t index) {
  thread_local BigInt a_lo, r_lo, a_hi, r_hi;
  auto& lo = p.x_.lo;
  auto& hi = p.x_.hi;
  mpz_fdiv_qr(a_lo.get_mpz_t(), r_lo.get_mpz_t(), den_of(lo), num_of(lo));
  mpz_fdiv_qr(a_hi.get_mpz_t(), r_hi.get_mpz_t(), den_of(hi), num_of(hi));
  if (a_lo != a_hi || sgn(r_lo) == 0 || sgn(r_hi) == 0) {
    throw Error(ErrorKind::PrecisionExhausted,
                "step: x interval straddles a cylinder boundary at index " +
                    std::to_string(index),
                index);
  }
  mpz_srcptr a = a_lo.get_mpz_t();
  gauss_endpoint(lo, a);
  gauss_endpoint(hi, a);
  mpq_swap(lo.get_mpq_t(), hi.get_mpq_t());  // T reverses order on a cylinder
  if (p.y_) {
    reciprocal_shift(*p.y_, a);
  } else {
    p.y_ = make_reduced(-a_lo, BigInt(1));
  }
}

NEPoint step(const NEPoint& p) {
  NEPoint out = p;
  step_in_place(out);
  return out;
}

NEPoint step_from_infinity(const CertifiedReal& x) {
  NEPoint p = NEPoint::at_infinity(x);
  step_in_place(p);
  return p;
}

NEPoint inverse_step(const NEPoint& p) {
  const BigRational& y = p.y();
  if (y.get_den() == 1) {
    throw Error(ErrorKind::IntegerYBoundary, "inverse_step: y is an integer");
  }
  const BigInt a = floor_of(BigRational(-y));
  auto invert_shifted = [&](const BigRational& v) {
    // 1/(v + a) for v = n/d: d / (n + a d), coprime.
    BigInt top = v.get_num() + a * v.get_den();
    BigInt bottom = v.get_den();
    if (sgn(top) < 0) {
      top = -top;
      bottom = -bottom;
    }
    return make_reduced(std::move(bottom), std::move(top));
  };
  RationalInterval x(invert_shifted(p.x().hi), invert_shifted(p.x().lo));
  return NEPoint(std::move(x), invert_shifted(y));
}

ProjectiveRational MobiusMap::apply(const ProjectiveRational& z) const {
  return ProjectiveRational::normalized(a * z.num + b * z.den, c * z.num + d * z.den);
}

RationalInterval MobiusMap::apply(const RationalInterval& x) const {
  const int s_lo = sgn(BigRational(c * x.lo + d));
  const int s_hi = sgn(BigRational(c * x.hi + d));
  if (s_lo == 0 || s_hi == 0 || s_lo != s_hi) {
    throw Error(ErrorKind::DomainViolation, "MobiusMap: pole inside the interval");
  }
  auto image = [&](const BigRational& v) -> BigRational { return (a * v + b) / (c * v + d); };
  return RationalInterval::hull(image(x.lo), image(x.hi));
}

MobiusMap mobius_of_prefix(const CFExpansion& cf, std::size_t n) {
  if (n + 1 > cf.length()) {
    throw Error(ErrorKind::IndexBeyondCertified, "mobius_of_prefix: needs n + 1 quotients", n);
  }
  const auto& cn = cf.convergent(n);
  const auto& cn1 = cf.convergent(n + 1);
  return MobiusMap{cn1.q, -cn1.p, -cn.q, cn.p};
}

NEPoint apply(const MobiusMap& m, const NEPoint& p) {
  RationalInterval x = m.apply(p.x());
  const ProjectiveRational y = p.y_is_infinite()
                                   ? m.apply(ProjectiveRational::infinity())
                                   : m.apply(ProjectiveRational::from(p.y()));
  if (y.is_infinite()) throw Error(ErrorKind::DomainViolation, "MobiusMap: y sent to infinity");
  return NEPoint(std::move(x), y.value());
}

RationalInterval norm(const NEPoint& p) {
  const BigRational& y = p.y();
  BigRational lo = 1 / BigRational(p.x().hi - y);
  BigRational hi = 1 / BigRational(p.x().lo - y);
  return RationalInterval(std::move(lo), std::move(hi));
}

double mu_omega_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "mu_omega_alpha: alpha must lie in (0, 1]");
  }
  constexpr double ln2 = std::numbers::ln2;
  if (alpha <= 0.5) return alpha / ln2;
  return (1.0 - alpha + ln2 + std::log(alpha)) / ln2;
}

}  // namespace ratlab
