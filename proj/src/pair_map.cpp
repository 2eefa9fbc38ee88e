#include "ratlab/pair_map.hpp"

#include "kernels/formulas.hpp"
#include "ratlab/error.hpp"

namespace ratlab {

namespace f = kernels::formula;

double pair_branch_plus(double x, double y) { return f::branch_plus(x, y); }
double pair_branch_minus(double x, double y) { return f::branch_minus(x, y); }

PairPoint pair_map(double x, double y, double alpha) {
  if (alpha < 0.5) throw Error(ErrorKind::DomainViolation, "pair_map requires alpha >= 1/2");
  switch (f::region(x, y, alpha)) {
    case kernels::kRegionPlus: return {f::norm(x, y), f::branch_plus(x, y)};
    case kernels::kRegionMinus: return {f::norm(x, y), f::branch_minus(x, y)};
    default: throw Error(ErrorKind::DomainViolation, "pair_map: point lies outside Omega_alpha");
  }
}

PairInterval pair_map(const NEPoint& p, const Alpha& alpha) {
  if (alpha.value() < 0.5) {
    throw Error(ErrorKind::DomainViolation, "pair_map requires alpha >= 1/2");
  }
  const Region region = classify_region(p, alpha);
  if (region == Region::Nabla) {
    throw Error(ErrorKind::DomainViolation, "pair_map: point lies outside Omega_alpha");
  }
  const BigRational& y = p.y();
  auto branch = [&](const BigRational& x) -> BigRational {
    if (region == Region::OmegaPlus) return -(x * y) / (x - y);
    return (1 - x) * (1 - y) / (x - y);
  };
  return {norm(p), RationalInterval::hull(branch(p.x().lo), branch(p.x().hi))};
}

OmegaPoint pair_inverse(PairPoint q) {
  if (!(q.w > 0.0 && q.z > 0.0 && 4.0 * q.w * q.z < 1.0)) {
    throw Error(ErrorKind::DomainViolation, "pair_inverse requires w, z > 0 and 4wz < 1");
  }
  OmegaPoint out;
  f::inverse_plus(q.w, q.z, out.x, out.y);
  return out;
}

OmegaPoint pair_inverse_minus(PairPoint q) {
  if (!(q.w > 0.0 && q.z > 0.0)) {
    throw Error(ErrorKind::DomainViolation, "pair_inverse_minus requires w, z > 0");
  }
  OmegaPoint out;
  f::inverse_minus(q.w, q.z, out.x, out.y);
  return out;
}

LambdaRegion lambda_classify(PairPoint q, double alpha) {
  return f::lambda_minus(q.w, q.z, alpha) ? LambdaRegion::Minus : LambdaRegion::Plus;
}

bool in_lambda(PairPoint q, double alpha) { return f::in_lambda(q.w, q.z, alpha); }

}  // namespace ratlab
