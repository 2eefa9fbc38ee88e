#include "ratlab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratlab/error.hpp"

namespace ratlab {

ReturnWalker::ReturnWalker(const CertifiedReal& x, const Alpha& alpha, std::size_t cap)
    : alpha_(alpha), cap_(cap), point_(step_from_infinity(x)) {}

const ReturnSample& ReturnWalker::next() {
  for (std::size_t taken = 1; taken <= cap_; ++taken) {
    ++n_;
    step_in_place(point_, n_);
    if (!norm_below(point_, alpha_, n_)) continue;

    const auto& x = point_.x();
    const BigRational& y = point_.y();
    const double y_d = to_double(y);
    const double lo_d = to_double(x.lo);
    const double hi_d = to_double(x.hi);
    sample_.k += 1;
    sample_.n = n_;
    sample_.theta_lo = 1.0 / (hi_d - y_d);
    sample_.theta_hi = 1.0 / (lo_d - y_d);
    sample_.log_q = log_abs(y.get_den());  // y_n = -q_{n+1}/q_n
    sample_.x = 0.5 * (lo_d + hi_d);
    sample_.y = y_d;
    return sample_;
  }
  throw Error(ErrorKind::NoReturnWithinCap,
              "return walker: no return within " + std::to_string(cap_) + " steps", n_);
}

std::vector<ReturnSample> collect_returns(const CertifiedReal& x, const Alpha& alpha,
                                          std::size_t count, std::size_t cap) {
  ReturnWalker walker(x, alpha, cap);
  std::vector<ReturnSample> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(walker.next());
  return out;
}

unsigned bits_for_returns(double alpha, std::size_t count) {
  const double n = static_cast<double>(count) / mu_omega_alpha(alpha);
  return static_cast<unsigned>(std::ceil(4.0 * n * 1.1)) + 256;
}

}  // namespace ratlab
