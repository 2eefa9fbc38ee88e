#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ratlab/error.hpp"
#include "ratlab/experiments.hpp"
#include "ratlab/orbit.hpp"
#include "ratlab/pair_map.hpp"
#include "support.hpp"

using namespace ratlab;
using namespace ratlab::testing;

namespace {

bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// Uniform draw from Lambda_alpha by rejection.
PairPoint lambda_draw(std::mt19937_64& rng, double alpha) {
  for (;;) {
    const double w = alpha * unit_double(rng), z = alpha * unit_double(rng);
    if (in_lambda({w, z}, alpha)) return {w, z};
  }
}

}  // namespace

TEST(PairMap, Examples) {
  const PairPoint a = pair_map(0.5, -2.0, 0.7);
  EXPECT_TRUE(close(a.w, 0.4));
  EXPECT_TRUE(close(a.z, 0.4));

  // (0.75, -3) sits on the plus side of the curve at alpha = 0.7.
  EXPECT_EQ(classify_region(0.75, -3.0, 0.7), Region::OmegaPlus);
  EXPECT_TRUE(close(pair_map(0.75, -3.0, 0.7).z, 0.6));
  EXPECT_TRUE(close(pair_branch_minus(0.75, -3.0), 1.0 / 3.75));

  // A point that is on the minus side.
  EXPECT_EQ(classify_region(0.8, -6.0, 0.7), Region::OmegaMinus);
  EXPECT_TRUE(close(pair_map(0.8, -6.0, 0.7).z, 0.2 * 7.0 / 6.8));
}

TEST(PairMap, Contract) {
  EXPECT_THROW(pair_map(0.5, -2.0, 0.45), Error);
  EXPECT_THROW(pair_map(0.79, -1.05, 0.5), Error);
  EXPECT_THROW(pair_map(point(0.79, q(-105, 100)), Alpha(0.5)), Error);
  EXPECT_THROW(pair_map(point(0.5, q(-2, 1)), Alpha(0.4)), Error);
}

TEST(PairMap, CertifiedExample) {
  const PairInterval r = pair_map(NEPoint(RationalInterval::point(q(1, 2)), q(-2, 1)), Alpha(0.7));
  EXPECT_EQ(r.w.lo, q(2, 5));
  EXPECT_EQ(r.z.lo, q(2, 5));
  EXPECT_EQ(r.z.hi, q(2, 5));
}

TEST(PairInverse, Examples) {
  const OmegaPoint p = pair_inverse({0.4, 0.4});
  EXPECT_TRUE(close(p.x, 0.5));
  EXPECT_TRUE(close(p.y, -2.0));
  EXPECT_THROW(pair_inverse({0.6, 0.5}), Error);
  EXPECT_THROW(pair_inverse({0.0, 0.5}), Error);
  EXPECT_THROW(pair_inverse_minus({0.1, -0.1}), Error);

  const PairPoint f = pair_map(0.8, -6.0, 0.7);
  const OmegaPoint back = pair_inverse_minus(f);
  EXPECT_TRUE(close(back.x, 0.8));
  EXPECT_TRUE(close(back.y, -6.0));

  const OmegaPoint again = pair_inverse_minus({1.0 / 3.75, pair_branch_minus(0.75, -3.0)});
  EXPECT_TRUE(close(again.x, 0.75));
  EXPECT_TRUE(close(again.y, -3.0));
}

TEST(PairInverse, PlusBranchRoundTripAndRange) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100000; ++i) {
    // Triangle w + z < 1.
    double w = unit_double(rng), z = unit_double(rng);
    if (w + z >= 1) {
      w = 1 - w;
      z = 1 - z;
    }
    if (w <= 0 || z <= 0) continue;
    const OmegaPoint p = pair_inverse({w, z});
    ASSERT_LT(p.y, -1.0) << w << " " << z;
    ASSERT_GT(p.x, 0.0);
    ASSERT_LT(p.x, 1.0);
    EXPECT_TRUE(close(1.0 / (p.x - p.y), w, 1e-12));
    EXPECT_TRUE(close(pair_branch_plus(p.x, p.y), z, 1e-12));
  }
}

TEST(PairInverse, MinusBranchRoundTripLandsInOmegaMinus) {
  std::mt19937_64 rng(2);
  for (double alpha : {0.55, 0.7, 0.9}) {
    int checked = 0;
    while (checked < 20000) {
      const PairPoint q = lambda_draw(rng, alpha);
      if (lambda_classify(q, alpha) != LambdaRegion::Minus) continue;
      ++checked;
      const OmegaPoint p = pair_inverse_minus(q);
      EXPECT_GT(p.x, alpha);
      EXPECT_EQ(classify_region(p.x, p.y, alpha), Region::OmegaMinus) << q.w << " " << q.z;
      const PairPoint back = pair_map(p.x, p.y, alpha);
      EXPECT_TRUE(close(back.w, q.w, 1e-12));
      EXPECT_TRUE(close(back.z, q.z, 1e-12));
    }
  }
}

TEST(PairInverse, InverseOfMapOnEachRegion) {
  for (double alpha : {0.5, 0.7, 1.0}) {
    OmegaSampler sampler(4, alpha, 128);
    for (int i = 0; i < 5000; ++i) {
      const NEPoint s = sampler.next();
      const double x = mid(s.x()), y = to_double(s.y());
      const Region r = classify_region(x, y, alpha);
      if (r == Region::Nabla) continue;
      const PairPoint f = pair_map(x, y, alpha);
      const OmegaPoint back = r == Region::OmegaPlus ? pair_inverse(f) : pair_inverse_minus(f);
      EXPECT_TRUE(close(back.x, x, 1e-10));
      EXPECT_TRUE(close(back.y, y, 1e-10));
    }
  }
}

TEST(PairInverse, MinusBoundaryCurve) {
  for (double alpha : {0.6, 0.7, 0.8, 0.9}) {
    int samples = 0;
    for (int i = 1; i < 1000 && samples < 100; ++i) {
      const double w = i * (1.0 / (4.0 * alpha)) / 1000;
      const double z = w - alpha + std::sqrt(1.0 - 4.0 * alpha * w);
      if (!(z > 0 && z < alpha && w + z < 1)) continue;
      ++samples;
      const OmegaPoint p = pair_inverse_minus({w, z});
      const double curve = alpha * p.x / (alpha - p.x);
      EXPECT_LE(std::abs(p.y - curve), 1e-10 * std::max(1.0, std::abs(curve))) << alpha << " " << w;
    }
    EXPECT_EQ(samples, 100);
  }
}

TEST(LambdaClassify, Examples) {
  EXPECT_EQ(lambda_classify({0.1, 0.05}, 0.7), LambdaRegion::Minus);
  EXPECT_EQ(lambda_classify({0.1, 0.5}, 0.7), LambdaRegion::Plus);
  EXPECT_EQ(lambda_classify({0.1, 1e-9}, 1.0), LambdaRegion::Plus);
  EXPECT_EQ(lambda_classify({0.3, 0.1}, 0.7), LambdaRegion::Plus);  // 4 alpha w > 1
  EXPECT_TRUE(in_lambda({0.3, 0.3}, 0.5));
  EXPECT_FALSE(in_lambda({0.6, 0.5}, 0.7));
  EXPECT_FALSE(in_lambda({0.5, 0.2}, 0.5));
}

TEST(LambdaClassify, MinusIsEmptyAtAlphaOne) {
  // w - 1 + sqrt(1 - 4w) <= 0 on [0, 1/4]: grid scan over Lambda_1.
  for (int i = 1; i < 1000; ++i) {
    for (int j = 1; j < 1000; ++j) {
      const PairPoint q{i / 1000.0, j / 1000.0};
      if (!in_lambda(q, 1.0)) continue;
      ASSERT_EQ(lambda_classify(q, 1.0), LambdaRegion::Plus) << q.w << " " << q.z;
    }
  }
}

TEST(PairMap, RangeIsLambda) {
  for (double alpha : {0.5, 0.7, 1.0}) {
    OmegaSampler sampler(9, alpha, 128);
    for (int i = 0; i < 100000; ++i) {
      const NEPoint s = sampler.next();
      const double x = mid(s.x()), y = to_double(s.y());
      if (classify_region(x, y, alpha) == Region::Nabla) continue;
      const PairPoint f = pair_map(x, y, alpha);
      ASSERT_TRUE(in_lambda(f, alpha)) << x << " " << y << " -> " << f.w << " " << f.z;
    }
  }
}

TEST(PairMap, RegionMatchesLambdaRegion) {
  for (double alpha : {0.6, 0.8}) {
    OmegaSampler sampler(10, alpha, 128);
    int minus = 0;
    for (int i = 0; i < 20000; ++i) {
      const NEPoint s = sampler.next();
      const double x = mid(s.x()), y = to_double(s.y());
      const Region r = classify_region(x, y, alpha);
      if (r != Region::OmegaMinus) continue;
      ++minus;
      const PairPoint f = pair_map(x, y, alpha);
      const double edge = f.w - alpha + std::sqrt(1 - 4 * alpha * f.w);
      if (std::abs(f.z - edge) < 1e-9) continue;
      EXPECT_EQ(lambda_classify(f, alpha), LambdaRegion::Minus);
    }
    EXPECT_GT(minus, 100);
  }
}

TEST(PairMap, NoCollisionsAmongSampledImages) {
  std::set<std::pair<long long, long long>> seen;
  OmegaSampler sampler(12, 0.7, 128);
  std::size_t images = 0;
  for (int i = 0; i < 100000; ++i) {
    const NEPoint s = sampler.next();
    const double x = mid(s.x()), y = to_double(s.y());
    if (classify_region(x, y, 0.7) == Region::Nabla) continue;
    const PairPoint f = pair_map(x, y, 0.7);
    seen.emplace(std::llround(f.w * 1e12), std::llround(f.z * 1e12));
    ++images;
  }
  EXPECT_EQ(seen.size(), images);
}

TEST(PairMap, TwoPreimagesOverLambdaMinus) {
  // Over Lambda^-, the plus inverse also lands in Omega^+ with the same image.
  std::mt19937_64 rng(3);
  const double alpha = 0.7;
  int found = 0;
  while (found < 1000) {
    const PairPoint q = lambda_draw(rng, alpha);
    if (lambda_classify(q, alpha) != LambdaRegion::Minus) continue;
    ++found;
    const OmegaPoint plus = pair_inverse(q);
    const OmegaPoint minus = pair_inverse_minus(q);
    EXPECT_EQ(classify_region(plus.x, plus.y, alpha), Region::OmegaPlus);
    EXPECT_EQ(classify_region(minus.x, minus.y, alpha), Region::OmegaMinus);
    const PairPoint a = pair_map(plus.x, plus.y, alpha);
    const PairPoint b = pair_map(minus.x, minus.y, alpha);
    EXPECT_TRUE(close(a.w, b.w, 1e-12) && close(a.z, b.z, 1e-12));
  }
}

TEST(PairMap, SecondCoordinateIsNextThetaBar) {
  for (double alpha : {0.5, 0.7, 1.0}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto x = sample_irrational(seed, bits_for_returns(alpha, 1001));
      ReturnWalker walker(x, Alpha(alpha));
      walker.next();
      for (int k = 1; k <= 1000; ++k) {
        const PairInterval f = pair_map(walker.point(), Alpha(alpha));
        const NEPoint here = walker.point();
        const RationalInterval theta_k = norm(here);
        walker.next();
        const RationalInterval theta_next = norm(walker.point());
        ASSERT_TRUE(f.w.overlaps(theta_k));
        ASSERT_TRUE(f.z.overlaps(theta_next)) << "alpha " << alpha << " k " << k;
      }
    }
  }
}
