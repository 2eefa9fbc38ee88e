#include "ratlab/cf.hpp"

#include <string>

#include "ratlab/error.hpp"

namespace ratlab {

namespace {

// One Gauss step on num/den in (0, 1): returns a = floor(den/num) and leaves
// the remainder as the new fraction. False when the fraction is already 0.
bool gauss_step(BigInt& num, BigInt& den, BigInt& a, BigInt& rem) {
  if (sgn(num) == 0) return false;
  mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
  mpz_swap(den.get_mpz_t(), num.get_mpz_t());  // den <- num
  mpz_swap(num.get_mpz_t(), rem.get_mpz_t());  // num <- remainder
  return true;
}

[[noreturn]] void beyond(std::string_view what, std::size_t n, std::size_t available) {
  throw Error(ErrorKind::IndexBeyondCertified,
              std::string(what) + ": index " + std::to_string(n) + " needs more than the " +
                  std::to_string(available) + " certified quotients",
              n);
}

BigRational theta_at(const Convergent& c, const BigRational& v) {
  BigRational t = c.q * v - c.p;
  return c.q * abs(t);
}

}  // namespace

CFExpansion::CFExpansion(std::vector<BigInt> quotients, CertifiedReal source)
    : quotients_(std::move(quotients)), source_(std::move(source)) {
  convergents_.reserve(quotients_.size() + 1);
  BigInt p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
  BigInt p = 0, q = 1;            // p_0/q_0
  convergents_.push_back({p, q});
  for (const auto& a : quotients_) {
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    convergents_.push_back({p, q});
  }
}

const BigInt& CFExpansion::quotient(std::size_t k) const {
  if (k == 0 || k > quotients_.size()) beyond("quotient", k, quotients_.size());
  return quotients_[k - 1];
}

const Convergent& CFExpansion::convergent(std::size_t k) const {
  if (k >= convergents_.size()) beyond("convergent", k, quotients_.size());
  return convergents_[k];
}

CFExpansion cf_expand(const CertifiedReal& x, std::size_t max_terms) {
  BigInt lo_num = x.lo().get_num(), lo_den = x.lo().get_den();
  BigInt hi_num = x.hi().get_num(), hi_den = x.hi().get_den();
  BigInt a_lo, a_hi, rem;
  std::vector<BigInt> quotients;
  while (quotients.size() < max_terms) {
    if (!gauss_step(lo_num, lo_den, a_lo, rem) || !gauss_step(hi_num, hi_den, a_hi, rem)) break;
    if (a_lo != a_hi || sgn(lo_num) == 0 || sgn(hi_num) == 0) break;
    quotients.push_back(a_lo);
  }
  if (quotients.empty()) {
    throw Error(ErrorKind::PrecisionExhausted,
                "cf_expand: the interval straddles a cylinder boundary at the first quotient", 1);
  }
  return CFExpansion(std::move(quotients), x);
}

ThetaSequence theta_seq(const CFExpansion& cf, std::size_t n_max) {
  if (n_max > cf.length()) beyond("theta_seq", n_max, cf.length());
  ThetaSequence out;
  out.reserve(n_max + 1);
  const auto& src = cf.source();
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto& c = cf.convergent(n);
    out.push_back(RationalInterval::hull(theta_at(c, src.lo()), theta_at(c, src.hi())));
  }
  return out;
}

TailReversal tail_and_reversal(const CFExpansion& cf, std::size_t n) {
  if (n + 2 > cf.length()) beyond("tail_and_reversal", n, cf.length());
  const auto& cn = cf.convergent(n);
  const auto& cn1 = cf.convergent(n + 1);
  auto image = [&](const BigRational& v) -> BigRational {
    return (cn1.q * v - cn1.p) / (cn.p - cn.q * v);
  };
  const auto& src = cf.source();
  RationalInterval x_n = RationalInterval::hull(image(src.lo()), image(src.hi()));

  // [a_n, ..., a_1], folded from a_1 outwards.
  BigInt num = 0, den = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    BigInt next_den = cf.quotient(j) * den + num;
    num = std::move(den);
    den = std::move(next_den);
  }
  BigRational y_n = -BigRational(cf.quotient(n + 1)) - make_reduced(num, den);
  return {std::move(x_n), std::move(y_n)};
}

std::pair<BigRational, BigRational> cylinder_interval(const CFExpansion& cf, std::size_t n) {
  if (n + 1 > cf.length()) beyond("cylinder_interval", n, cf.length());
  const auto& cn = cf.convergent(n);
  const auto& cn1 = cf.convergent(n + 1);
  return {make_reduced(cn1.p, cn1.q), BigRational(cn1.p + cn.p, cn1.q + cn.q)};
}

}  // namespace ratlab
