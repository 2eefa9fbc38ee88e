#include <gtest/gtest.h>

#include <random>

#include "ratlab/cf.hpp"
#include "ratlab/error.hpp"
#include "ratlab/experiments.hpp"
#include "ratlab/hyper.hpp"
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

// Independent oracle for an open disc against a semicircle: compare the
// distance between centres with the radii, squared, exactly.
bool semicircle_meets_disc(const BigRational& left, const BigRational& right, const Disc& d) {
  const BigRational c = (left + right) / 2, r = (right - left) / 2;
  const BigRational t = d.tangent(), rho = d.radius();
  const BigRational dist2 = (c - t) * (c - t) + rho * rho;
  // Open discs overlap iff |r - rho| < dist < r + rho.
  const BigRational lo = (r - rho) * (r - rho), hi = (r + rho) * (r + rho);
  return lo < dist2 && dist2 < hi;
}

MobiusMap random_unimodular(std::mt19937_64& rng) {
  MobiusMap m{1, 0, 0, 1};
  const int steps = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < steps; ++i) {
    MobiusMap g;
    switch (rng() % 4) {
      case 0: g = {1, 1, 0, 1}; break;
      case 1: g = {1, -1, 0, 1}; break;
      case 2: g = {0, -1, 1, 0}; break;
      default: g = {-1, 0, 0, 1}; break;  // z -> -conj(z)
    }
    m = {m.a * g.a + m.b * g.c, m.a * g.b + m.b * g.d, m.c * g.a + m.d * g.c,
         m.c * g.b + m.d * g.d};
  }
  return m;
}

BigRational random_rational(std::mt19937_64& rng) {
  BigRational v(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97 + 1));
  v.canonicalize();
  return v;
}

}  // namespace

TEST(FordDisc, Examples) {
  const Disc d = ford_disc(0, 1, q(3, 5));
  EXPECT_EQ(d.tangent(), 0);
  EXPECT_EQ(d.radius(), q(3, 5));
  const Disc e = ford_disc(1, 2, q(1, 1));
  EXPECT_EQ(e.tangent(), q(1, 2));
  EXPECT_EQ(e.radius(), q(1, 4));
  EXPECT_EQ(kind_of([] { ford_disc(2, 4, q(1, 1)); }), ErrorKind::NotReduced);
  EXPECT_EQ(kind_of([] { ford_disc(1, 0, q(1, 1)); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ford_disc(1, 2, q(3, 2)); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(horocycle_at_infinity(q(1, 2)).height, 1);
}

TEST(Intersects, Examples) {
  const auto x = near(0.79).interval();
  const Alpha a(0.6);
  EXPECT_FALSE(intersects(x, q(-3, 1), ford_disc(0, 1, a.exact())));
  EXPECT_TRUE(intersects(x, q(-3, 1), ford_disc(1, 1, a.exact())));
  // Exact semicircle versions.
  const BigRational x79 = q(79, 100);
  EXPECT_FALSE(intersects(Semicircle{q(-3, 1), x79}, ford_disc(0, 1, a.exact())));
  EXPECT_TRUE(intersects(Semicircle{q(-3, 1), x79}, ford_disc(1, 1, a.exact())));
  EXPECT_TRUE(intersects(Vertical{q(1, 2)}, HalfPlane{q(5, 1)}));
  EXPECT_TRUE(intersects(Vertical{q(1, 10)}, ford_disc(0, 1, q(1, 5))));
  EXPECT_FALSE(intersects(Vertical{q(1, 5)}, ford_disc(0, 1, q(1, 5))));
  // Half-plane: top of the semicircle (x - y)/2 above the height.
  EXPECT_TRUE(intersects(Semicircle{q(-2, 1), q(1, 1)}, HalfPlane{q(3, 2) - q(1, 100)}));
  EXPECT_FALSE(intersects(Semicircle{q(-2, 1), q(1, 1)}, HalfPlane{q(3, 2)}));
}

TEST(Intersects, StraddleThrows) {
  // The geodesic from -3 meets D_0(0.6) for x = 0.01 but not for x = 0.99.
  const RationalInterval x(q(1, 100), q(99, 100));
  EXPECT_EQ(kind_of([&] { intersects(x, q(-3, 1), ford_disc(0, 1, q(3, 5))); }),
            ErrorKind::StraddlesThreshold);
}

TEST(Intersects, MatchesSquaredDistanceOracle) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    BigRational a = random_rational(rng), b = random_rational(rng);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    BigInt p(static_cast<long>(rng() % 41) - 20), qq(static_cast<long>(rng() % 6 + 1));
    BigInt g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), qq.get_mpz_t());
    if (g != 1) continue;
    const Disc d = ford_disc(p, qq, BigRational(static_cast<long>(rng() % 10 + 1), 10L));
    ASSERT_EQ(intersects(Semicircle{a, b}, d), semicircle_meets_disc(a, b, d))
        << a << " " << b << " " << p << "/" << qq;
  }
}

TEST(Mobius, Examples) {
  const MobiusMap s{0, -1, 1, 0};
  const Horocycle img = mobius_image(s, Horocycle{ford_disc(0, 1, q(3, 5))});
  ASSERT_TRUE(std::holds_alternative<HalfPlane>(img));
  EXPECT_EQ(std::get<HalfPlane>(img).height, q(5, 6));

  const MobiusMap id{1, 0, 0, 1};
  const Horocycle same = mobius_image(id, Horocycle{ford_disc(2, 7, q(1, 2))});
  EXPECT_EQ(std::get<Disc>(same).p, 2);
  EXPECT_EQ(std::get<Disc>(same).q, 7);
  EXPECT_THROW(mobius_image(MobiusMap{2, 0, 0, 1}, Horocycle{HalfPlane{q(1, 1)}}), Error);
}

TEST(Mobius, PrefixMapSendsConvergentDiscToHalfPlane) {
  const auto cf = cf_expand(sample_irrational(4, 512), 40);
  for (std::size_t n = 0; n + 1 <= cf.length(); ++n) {
    const auto& c = cf.convergent(n);
    const Horocycle img =
        mobius_image(mobius_of_prefix(cf, n), Horocycle{ford_disc(c.p, c.q, q(7, 10))});
    ASSERT_TRUE(std::holds_alternative<HalfPlane>(img));
    EXPECT_EQ(std::get<HalfPlane>(img).height, q(5, 7));
  }
}

TEST(Mobius, InvarianceOfIntersection) {
  std::mt19937_64 rng(2);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    BigRational a = random_rational(rng), b = random_rational(rng);
    if (a == b) continue;
    const Geodesic g = geodesic_between(ProjectiveRational::from(a), ProjectiveRational::from(b));
    Horocycle h;
    if (rng() % 5 == 0) {
      h = HalfPlane{BigRational(static_cast<long>(rng() % 20 + 1), 7L)};
    } else {
      BigInt p(static_cast<long>(rng() % 21) - 10), qq(static_cast<long>(rng() % 5 + 1));
      BigInt gg;
      mpz_gcd(gg.get_mpz_t(), p.get_mpz_t(), qq.get_mpz_t());
      if (gg != 1) continue;
      h = ford_disc(p, qq, BigRational(static_cast<long>(rng() % 10 + 1), 10L));
    }
    const MobiusMap m = random_unimodular(rng);
    ASSERT_EQ(intersects(g, h), intersects(mobius_image(m, g), mobius_image(m, h)));
    ++checked;
  }
  EXPECT_GT(checked, 10000);
}

TEST(GeometricThetaTest, Examples) {
  const auto cf4 = cf_expand(near(0.4), 10);
  EXPECT_TRUE(geometric_theta_test(cf4, 0, q(-3, 1), Alpha(1.0)));
  EXPECT_NEAR(mid(norm(step(point(0.4, q(-3, 1))))), 0.3529, 1e-4);

  const auto cf79 = cf_expand(near(0.79), 10);
  EXPECT_FALSE(geometric_theta_test(cf79, 0, q(-3, 1), Alpha(0.6)));
  EXPECT_NEAR(mid(norm(step(point(0.79, q(-3, 1))))), 0.6253, 1e-4);
  EXPECT_EQ(kind_of([&] { geometric_theta_test(cf79, cf79.length() + 1, q(-3, 1), Alpha(0.6)); }),
            ErrorKind::IndexBeyondCertified);
}

TEST(GeometricThetaTest, EqualsDynamicalThreshold) {
  for (double alpha : {0.3, 0.45, 0.5, 0.8}) {
    const Alpha a(alpha);
    OmegaSampler sampler(31, std::max(alpha, 0.5), 512);
    int checked = 0;
    for (int i = 0; i < 2500; ++i) {
      const NEPoint p = sampler.next();
      const auto cf = cf_expand(CertifiedReal::from_interval(p.x().lo, p.x().hi), 25);
      NEPoint orbit = p;
      for (std::size_t n = 0; n <= 20 && n + 1 <= cf.length(); ++n) {
        step_in_place(orbit);  // T^{n+1}(p)
        bool geo, dyn;
        try {
          geo = geometric_theta_test(cf, n, p.y(), a);
          dyn = norm_below(orbit, a);
        } catch (const Error& e) {
          ASSERT_EQ(e.kind(), ErrorKind::StraddlesThreshold);
          continue;
        }
        ASSERT_EQ(geo, dyn) << "alpha " << alpha << " draw " << i << " n " << n;
        ++checked;
      }
    }
    EXPECT_GT(checked, 40000);
  }
}

TEST(MinimalDisc, Examples) {
  const Alpha a(0.6);
  const MinimalDisc one = minimal_disc(point(0.79, q(-3, 1)), a);
  EXPECT_EQ(one.disc.p, 1);
  EXPECT_EQ(one.disc.q, 1);
  EXPECT_EQ(one.n, 1u);
  const MinimalDisc zero = minimal_disc(point(0.3, q(-2, 1)), a);
  EXPECT_EQ(zero.disc.p, 0);
  EXPECT_EQ(zero.disc.q, 1);
  EXPECT_EQ(zero.n, 0u);
}

TEST(MinimalDisc, AlwaysDZeroOrDOneAboveOneHalf) {
  for (double alpha : {0.5, 0.7, 1.0}) {
    OmegaSampler sampler(5, alpha, 256);
    for (int i = 0; i < 3000; ++i) {
      const NEPoint p = sampler.next();
      try {
        const MinimalDisc d = minimal_disc(p, Alpha(alpha));
        EXPECT_EQ(d.disc.q, 1);
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::StraddlesThreshold);
      }
    }
  }
}

TEST(MinimalDisc, NoDiscOnGoldenTail) {
  NEPoint p = step_from_infinity(golden_ratio_conjugate(2048));
  for (int n = 0; n < 5; ++n) p = step(p);
  EXPECT_EQ(kind_of([&] { minimal_disc(p, Alpha(0.44), 100); }),
            ErrorKind::NoIntersectingDiscWithinCap);
}

TEST(GeometricTau, Examples) {
  const Alpha a(0.6);
  EXPECT_EQ(geometric_tau(point(0.79, q(-3, 1)), a), 2u);
  EXPECT_EQ(geometric_tau(point(0.3, q(-2, 1)), a), 1u);
}

TEST(GeometricTau, EqualsTau) {
  for (double alpha : {0.3, 0.45, 0.5, 0.8}) {
    const auto run = run_geom_check(alpha, 1500, 77);
    EXPECT_EQ(run.disagree, 0u) << alpha;
    EXPECT_GT(run.agree, 1400u) << alpha;
  }
}

TEST(FiniteReturnScan, Golden) {
  const auto cf = cf_expand(golden_ratio_conjugate(4096), 1001);
  ASSERT_GE(cf.length(), 1000u);
  EXPECT_EQ(finite_return_scan(cf, std::nullopt, Alpha(0.44), 1000),
            (std::vector<std::size_t>{1, 3}));
  const auto at046 = finite_return_scan(cf, std::nullopt, Alpha(0.46), 1000);
  EXPECT_EQ(at046.size(), 999u);
  EXPECT_EQ(std::count(at046.begin(), at046.end(), std::size_t{2}), 0);
  EXPECT_EQ(finite_return_scan(cf, std::nullopt, Alpha(0.48), 1000).size(), 1000u);
  EXPECT_EQ(kind_of([&] { finite_return_scan(cf, std::nullopt, Alpha(0.44), cf.length() + 1); }),
            ErrorKind::IndexBeyondCertified);
}

TEST(FiniteReturnScan, MatchesThetaSequence) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cf = cf_expand(sample_irrational(seed, 1024), 200);
    const auto theta = theta_seq(cf, 150);
    const Alpha a(0.42);
    std::vector<std::size_t> expect;
    for (std::size_t n = 1; n <= 150; ++n) {
      if (theta[n].hi < a.exact()) expect.push_back(n);
    }
    EXPECT_EQ(finite_return_scan(cf, std::nullopt, a, 150), expect);
  }
}

TEST(ExampleOne, ReturnTimesAtMostThree) {
  for (double alpha : {0.47, 0.48, 0.49}) {
    const auto counts = run_tau_counts(alpha, 4000, 3);
    EXPECT_LT(counts.count(0) ? counts.at(0) : 0, 10u);
    for (const auto& [t, c] : counts) {
      if (t == 0) continue;
      EXPECT_TRUE(t >= 1 && t <= 3) << "tau " << t << " at " << alpha;
    }
    EXPECT_GT(counts.count(3) ? counts.at(3) : 0, 0u);
  }
}
