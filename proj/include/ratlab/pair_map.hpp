#pragma once

#include "ratlab/arith.hpp"
#include "ratlab/first_return.hpp"
#include "ratlab/natural_extension.hpp"

namespace ratlab {

// (w, z) in Lambda_alpha = {0 < w < alpha, 0 < z < alpha, w + z < 1}.
struct PairPoint {
  double w = 0.0;
  double z = 0.0;
};

struct PairInterval {
  RationalInterval w;
  RationalInterval z;
};

struct OmegaPoint {
  double x = 0.0;
  double y = 0.0;
};

enum class LambdaRegion { Plus, Minus };

// The two branches, defined on all of Omega:
//   plus:  -x y / (x - y)            (= ||T(x, y)|| when the return takes 1 step)
//   minus: (1 - x)(1 - y) / (x - y)  (= ||T^2(x, y)|| when it takes 2)
double pair_branch_plus(double x, double y);
double pair_branch_minus(double x, double y);

// (||p||, plus or minus branch by region). alpha >= 1/2 only; p must not lie in
// Nabla. Throws DomainViolation on either violation.
PairPoint pair_map(double x, double y, double alpha);

// Certified version on an exact point. Every coordinate is monotone in x for
// fixed y, so the endpoint images enclose the image of the whole interval.
PairInterval pair_map(const NEPoint& p, const Alpha& alpha);

// Inverse of the plus branch on the triangle w + z < 1 (requires 4wz < 1).
OmegaPoint pair_inverse(PairPoint q);

// Inverse of the minus branch (requires w > 0, z > 0).
OmegaPoint pair_inverse_minus(PairPoint q);

// Minus iff 4 alpha w <= 1 and z < w - alpha + sqrt(1 - 4 alpha w).
LambdaRegion lambda_classify(PairPoint q, double alpha);

bool in_lambda(PairPoint q, double alpha);

}  // namespace ratlab
