#include "ratlab/arith.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ratlab/error.hpp"

namespace ratlab {

BigRational make_reduced(BigInt num, BigInt den) {
  BigRational r;
  mpz_swap(r.get_num_mpz_t(), num.get_mpz_t());
  mpz_swap(r.get_den_mpz_t(), den.get_mpz_t());
  return r;
}

BigRational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "exact_rational: non-finite value");
  }
  BigRational r;
  mpq_set_d(r.get_mpq_t(), value);  // exact for every finite double
  return r;
}

double to_double(const BigInt& value) {
  if (sgn(value) == 0) return 0.0;
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::ldexp(mantissa, static_cast<int>(exp));
}

double to_double(const BigRational& value) {
  const auto& num = value.get_num();
  const auto& den = value.get_den();
  if (sgn(num) == 0) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

double log_abs(const BigInt& value) {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exp) * std::numbers::ln2;
}

BigInt floor_of(const BigRational& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

RationalInterval::RationalInterval(BigRational lo_, BigRational hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "RationalInterval: lo > hi");
}

RationalInterval RationalInterval::point(const BigRational& value) {
  return RationalInterval(value, value);
}

RationalInterval RationalInterval::hull(BigRational a, BigRational b) {
  if (a > b) std::swap(a, b);
  return RationalInterval(std::move(a), std::move(b));
}

double RationalInterval::midpoint_double() const {
  return 0.5 * (to_double(lo) + to_double(hi));
}

ProjectiveRational ProjectiveRational::infinity() { return {BigInt(1), BigInt(0)}; }

ProjectiveRational ProjectiveRational::from(const BigRational& value) {
  return {value.get_num(), value.get_den()};
}

ProjectiveRational ProjectiveRational::normalized(BigInt num, BigInt den) {
  if (sgn(num) == 0 && sgn(den) == 0) {
    throw Error(ErrorKind::InvalidArgument, "ProjectiveRational: 0/0");
  }
  if (sgn(den) == 0) return infinity();
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) {
    num /= g;
    den /= g;
  }
  if (sgn(den) < 0) {
    num = -num;
    den = -den;
  }
  return {std::move(num), std::move(den)};
}

BigRational ProjectiveRational::value() const {
  if (is_infinite()) throw Error(ErrorKind::InvalidArgument, "value of infinity");
  return make_reduced(num, den);
}

std::string to_string(const BigRational& value) { return value.get_str(); }

}  // namespace ratlab
