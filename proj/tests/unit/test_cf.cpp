#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ratlab/cf.hpp"
#include "ratlab/error.hpp"
#include "support.hpp"

using namespace ratlab;
using namespace ratlab::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ratlab::Error thrown";
  return ErrorKind::InvalidArgument;
}

// Independent oracle: Euclid on an exact rational.
std::vector<long> rational_quotients(BigRational v, std::size_t n) {
  std::vector<long> out;
  while (out.size() < n && sgn(v) != 0) {
    const BigRational inv = 1 / v;
    const BigInt a = floor_of(inv);
    out.push_back(a.get_si());
    v = inv - a;
  }
  return out;
}

}  // namespace

TEST(Arith, MakeReducedAndExactRational) {
  const BigRational r = make_reduced(BigInt(3), BigInt(7));
  EXPECT_EQ(r, q(3, 7));
  EXPECT_EQ(exact_rational(0.75), q(3, 4));
  EXPECT_EQ(exact_rational(-2.5), q(-5, 2));
  EXPECT_DOUBLE_EQ(to_double(q(1, 3)), 1.0 / 3.0);
  BigInt huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 2, 5000);
  EXPECT_NEAR(log_abs(huge), 5000 * std::log(2.0), 1e-9);
  EXPECT_EQ(floor_of(q(-7, 3)), -3);
}

TEST(Arith, IntervalBasics) {
  const auto h = RationalInterval::hull(q(3, 4), q(1, 4));
  EXPECT_EQ(h.lo, q(1, 4));
  EXPECT_EQ(h.hi, q(3, 4));
  EXPECT_EQ(h.width(), q(1, 2));
  EXPECT_TRUE(h.contains(q(1, 2)));
  EXPECT_FALSE(h.contains(q(4, 5)));
  EXPECT_TRUE(h.overlaps(RationalInterval(q(3, 4), q(1, 1))));
  EXPECT_FALSE(h.overlaps(RationalInterval(q(4, 5), q(1, 1))));
  EXPECT_THROW(RationalInterval(q(1, 2), q(1, 3)), Error);
}

TEST(Arith, ProjectiveNormalization) {
  const auto p = ProjectiveRational::normalized(BigInt(-4), BigInt(-6));
  EXPECT_EQ(p.num, 2);
  EXPECT_EQ(p.den, 3);
  EXPECT_TRUE(ProjectiveRational::normalized(BigInt(5), BigInt(0)).is_infinite());
  EXPECT_EQ(ProjectiveRational::normalized(BigInt(-5), BigInt(0)), ProjectiveRational::infinity());
}

TEST(CertifiedReal, SampleIsDeterministicWithExactWidth) {
  const auto a = sample_irrational(1, 64);
  const auto b = sample_irrational(1, 64);
  EXPECT_EQ(a.lo(), b.lo());
  EXPECT_EQ(a.hi(), b.hi());
  EXPECT_EQ(a.bits(), 64u);

  const auto wide = sample_irrational(1, 128);
  BigRational w(1);
  mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), 128);
  EXPECT_EQ(wide.hi() - wide.lo(), w);
  EXPECT_EQ(wide.bits(), 128u);

  const auto other = sample_irrational(2, 64);
  EXPECT_NE(other.lo(), a.lo());
}

TEST(CertifiedReal, MoreBitsRefineTheSameLeadingDigits) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto coarse = sample_irrational(seed, 128);
    const auto fine = sample_irrational(seed, 1000);
    EXPECT_GE(fine.lo(), coarse.lo());
    EXPECT_LE(fine.hi(), coarse.hi());
  }
}

TEST(CertifiedReal, RejectsBadInput) {
  EXPECT_THROW(sample_irrational(1, 63), Error);
  EXPECT_THROW(CertifiedReal::from_interval(q(1, 2), q(1, 2)), Error);
  EXPECT_THROW(CertifiedReal::from_interval(q(0, 1), q(1, 2)), Error);
  EXPECT_THROW(CertifiedReal::from_interval(q(1, 2), q(1, 1)), Error);
  EXPECT_THROW(CertifiedReal::from_decimal("12"), Error);
  EXPECT_THROW(CertifiedReal::from_decimal("1.2.3"), Error);
  EXPECT_THROW(CertifiedReal::from_decimal("-0.5"), Error);
  EXPECT_THROW(CertifiedReal::from_decimal("0.5e3"), Error);
}

TEST(CertifiedReal, DecimalKeepsFractionalPart) {
  const auto x = CertifiedReal::from_decimal("10.2838");
  EXPECT_EQ(x.lo(), q(2838, 10000));
  EXPECT_EQ(x.hi(), q(2839, 10000));
}

TEST(CertifiedReal, Fig1ConstantFile) {
  const auto x = CertifiedReal::from_decimal_file(RATLAB_TEST_DATA_DIR "/fig1_x.txt");
  // pi^2 + sqrt(2) - 1 = 10.28381796346245...
  EXPECT_NEAR(x.midpoint_double(), std::numbers::pi * std::numbers::pi + std::sqrt(2.0) - 1.0 - 10.0,
              1e-14);
  EXPECT_GE(x.bits(), 200u * 3u);
}

TEST(CfExpand, GoldenRatioIsAllOnesWithFibonacciConvergents) {
  const auto cf = cf_expand(golden_ratio_conjugate(512), 100);
  ASSERT_GE(cf.length(), 100u);
  BigInt f0 = 0, f1 = 1;  // p_k = F_k, q_k = F_{k+1}
  for (std::size_t k = 1; k <= cf.length(); ++k) {
    EXPECT_EQ(cf.quotient(k), 1);
    const BigInt f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
    EXPECT_EQ(cf.convergent(k).p, f0);
    EXPECT_EQ(cf.convergent(k).q, f1);
  }
  EXPECT_EQ(cf.convergent(0).p, 0);
  EXPECT_EQ(cf.convergent(0).q, 1);
}

TEST(CfExpand, PerturbedThreeSevenths) {
  BigRational eps(1);
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), 100);
  const auto x = CertifiedReal::from_interval(q(3, 7) + eps, q(3, 7) + 2 * eps);
  const auto cf = cf_expand(x, 10);
  ASSERT_GE(cf.length(), 2u);
  EXPECT_EQ(cf.quotient(1), 2);
  EXPECT_EQ(cf.quotient(2), 3);
}

TEST(CfExpand, StraddleAtFirstQuotient) {
  const auto x = CertifiedReal::from_interval(q(49, 100), q(51, 100));
  EXPECT_EQ(kind_of([&] { cf_expand(x, 10); }), ErrorKind::PrecisionExhausted);
}

TEST(CfExpand, PrefixMatchesExactEuclidAtBothEndpoints) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto x = sample_irrational(seed, 256);
    const auto cf = cf_expand(x, 1000);
    const auto lo = rational_quotients(x.lo(), cf.length() + 1);
    const auto hi = rational_quotients(x.hi(), cf.length() + 1);
    for (std::size_t k = 1; k <= cf.length(); ++k) {
      EXPECT_EQ(cf.quotient(k), lo[k - 1]);
      EXPECT_EQ(cf.quotient(k), hi[k - 1]);
    }
    // The prefix is maximal: the next quotients differ, or one endpoint ran out.
    if (lo.size() > cf.length() && hi.size() > cf.length()) {
      EXPECT_NE(lo[cf.length()], hi[cf.length()]);
    }
  }
}

TEST(CfExpand, DeterminantIdentityAlternates) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cf = cf_expand(sample_irrational(seed, 512), 1000);
    for (std::size_t k = 1; k <= cf.length(); ++k) {
      const auto& c = cf.convergent(k);
      const auto& b = cf.convergent(k - 1);
      const BigInt det = c.p * b.q - b.p * c.q;
      EXPECT_EQ(det, k % 2 == 1 ? 1 : -1) << "k=" << k;
      if (k >= 2) {
        EXPECT_GT(c.q, b.q);
      }
    }
  }
}

TEST(CfExpand, ShiftProperty) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = sample_irrational(seed, 512);
    const auto cf = cf_expand(x, 1000);
    const NEPoint t = step_from_infinity(x);
    const auto shifted = cf_expand(CertifiedReal::from_interval(t.x().lo, t.x().hi), 1000);
    ASSERT_GE(shifted.length() + 1, cf.length());
    for (std::size_t k = 1; k < cf.length(); ++k) {
      EXPECT_EQ(shifted.quotient(k), cf.quotient(k + 1));
    }
  }
}

TEST(ThetaSeq, GoldenValues) {
  const auto cf = cf_expand(golden_ratio_conjugate(512), 50);
  const auto theta = theta_seq(cf, 3);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  EXPECT_NEAR(mid(theta[0]), g, 1e-15);
  EXPECT_NEAR(mid(theta[1]), 0.381966, 1e-6);
  EXPECT_NEAR(mid(theta[2]), 0.472136, 1e-6);
  EXPECT_NEAR(mid(theta[3]), 0.437695, 1e-6);
  EXPECT_EQ(kind_of([&] { theta_seq(cf, 51); }), ErrorKind::IndexBeyondCertified);
}

TEST(ThetaSeq, ThetaZeroIsX) {
  const auto x = sample_irrational(9, 256);
  const auto theta = theta_seq(cf_expand(x, 10), 0);
  EXPECT_EQ(theta[0].lo, x.lo());
  EXPECT_EQ(theta[0].hi, x.hi());
}

TEST(ThetaSeq, EnclosesThetaOfInteriorRationals) {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto x = sample_irrational(seed, 256);
    const auto cf = cf_expand(x, 60);
    const auto theta = theta_seq(cf, cf.length());
    for (int trial = 0; trial < 5; ++trial) {
      const BigRational t(static_cast<long>(rng() % 1000 + 1), 1001L);
      const BigRational v = x.lo() + (x.hi() - x.lo()) * t;
      for (std::size_t n = 0; n <= cf.length(); ++n) {
        const auto& c = cf.convergent(n);
        const BigRational d = c.q * v - c.p;
        const BigRational th = c.q * abs(d);
        EXPECT_TRUE(theta[n].contains(th)) << "seed " << seed << " n " << n;
        EXPECT_GT(th, 0);
        EXPECT_LT(th, 1);
      }
    }
  }
}

TEST(TailReversal, Examples) {
  const auto golden = cf_expand(golden_ratio_conjugate(512), 50);
  EXPECT_EQ(tail_and_reversal(golden, 2).y_n, q(-3, 2));

  BigRational eps(1);
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), 100);
  const auto x = CertifiedReal::from_interval(q(3, 7) + eps, q(3, 7) + 2 * eps);
  const auto cf = cf_expand(x, 10);
  EXPECT_EQ(tail_and_reversal(cf, 0).y_n, q(-2, 1));
  EXPECT_THROW(tail_and_reversal(golden, 49), Error);
}

TEST(TailReversal, AgreesWithThetaSequence) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cf = cf_expand(sample_irrational(seed, 512), 1000);
    const std::size_t top = std::min<std::size_t>(100, cf.length() - 2);
    const auto theta = theta_seq(cf, top);
    for (std::size_t n = 0; n <= top; ++n) {
      const auto tr = tail_and_reversal(cf, n);
      const RationalInterval inv(1 / (tr.x_n.hi - tr.y_n), 1 / (tr.x_n.lo - tr.y_n));
      EXPECT_TRUE(inv.overlaps(theta[n])) << "n=" << n;
      EXPECT_LT(std::abs(mid(inv) - mid(theta[n])), 1e-15);
      // y_n = -q_{n+1}/q_n
      EXPECT_EQ(tr.y_n, -BigRational(cf.convergent(n + 1).q, cf.convergent(n).q));
    }
  }
}

TEST(Cylinder, Examples) {
  BigRational eps(1);
  mpq_div_2exp(eps.get_mpq_t(), eps.get_mpq_t(), 100);
  const auto cf = cf_expand(CertifiedReal::from_interval(q(3, 7) + eps, q(3, 7) + 2 * eps), 10);
  const auto [a, b] = cylinder_interval(cf, 1);
  EXPECT_EQ(a, q(3, 7));
  EXPECT_EQ(b, q(4, 9));

  const auto golden = cf_expand(golden_ratio_conjugate(256), 50);
  const auto [c, d] = cylinder_interval(golden, 0);
  EXPECT_EQ(c, q(1, 1));
  EXPECT_EQ(d, q(1, 2));
}

TEST(Cylinder, ContainsX) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = sample_irrational(seed, 256);
    const auto cf = cf_expand(x, 1000);
    for (std::size_t n = 0; n + 1 <= cf.length(); ++n) {
      const auto [a, b] = cylinder_interval(cf, n);
      const auto box = RationalInterval::hull(a, b);
      EXPECT_TRUE(box.contains(x.lo()) && box.contains(x.hi())) << "n=" << n;
    }
  }
}
