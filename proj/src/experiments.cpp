#include "ratlab/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace ratlab {

unsigned thread_count() {
  if (const char* env = std::getenv("RATLAB_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

OmegaSampler::OmegaSampler(std::uint64_t seed, double alpha, unsigned bits)
    : rng_(seed), alpha_(alpha), bits_(bits) {
  if (bits < 64) throw Error(ErrorKind::InvalidArgument, "OmegaSampler: bits must be >= 64");
}

NEPoint OmegaSampler::next() {
  BigInt top;
  mpz_ui_pow_ui(top.get_mpz_t(), 2, bits_);
  for (;;) {
    const double x_d = std::exp2(unit_double(rng_)) - 1.0;
    const double v = unit_double(rng_);
    BigInt low = 0;
    for (unsigned filled = 0; filled < bits_ - 53; filled += 64) {
      const unsigned take = std::min(64u, bits_ - 53 - filled);
      std::uint64_t word = rng_();
      if (take < 64) word >>= (64 - take);
      BigInt part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      mpz_mul_2exp(low.get_mpz_t(), low.get_mpz_t(), take);
      low += part;
    }
    if (!(x_d > 0.0) || !(v > 0.0) || v / (1.0 + x_d) >= alpha_.value()) {
      ++rejected_;
      continue;
    }
    BigInt p(std::floor(std::ldexp(x_d, 53)));
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), bits_ - 53);
    p += low;
    if (sgn(p) <= 0 || p + 1 >= top) {
      ++rejected_;
      continue;
    }
    const BigRational y = exact_rational(x_d - (1.0 + x_d) / v);
    if (!(y < -1)) {
      ++rejected_;
      continue;
    }
    BigRational lo(p, top), hi(p + 1, top);
    lo.canonicalize();
    hi.canonicalize();
    NEPoint point(RationalInterval(std::move(lo), std::move(hi)), y);
    try {
      if (norm_below(point, alpha_)) return point;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StraddlesThreshold) throw;
    }
    ++rejected_;
  }
}

std::vector<double> theta_bar_samples(const CertifiedReal& x, double alpha, std::size_t count) {
  ReturnWalker walker(x, Alpha(alpha));
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(walker.next().theta());
  return out;
}

std::vector<double> theta_bar_samples(std::uint64_t seed, double alpha, std::size_t count,
                                      unsigned* used_bits) {
  return with_precision_retry(
      seed, bits_for_returns(alpha, count),
      [&](const CertifiedReal& x) { return theta_bar_samples(x, alpha, count); }, 4, used_bits);
}

}  // namespace ratlab

namespace ratlab {

std::vector<PairPoint> theta_pairs(const CertifiedReal& x, double alpha, std::size_t count) {
  const auto theta = theta_bar_samples(x, alpha, count + 1);
  std::vector<PairPoint> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = {theta[k], theta[k + 1]};
  return out;
}

std::vector<std::uint64_t> seed_list(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = base + i;
  return seeds;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InsufficientSamples, "median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::size_t share_of(std::size_t total, std::size_t parts, std::size_t index) {
  return total / parts + (index < total % parts ? 1 : 0);
}

namespace {

struct SeedValue {
  double value;
  unsigned bits;
};

SeedStatistic summarize(double alpha, std::size_t k, const std::vector<std::uint64_t>& seeds,
                        const std::vector<SeedValue>& values, double expected,
                        std::string model) {
  SeedStatistic out;
  unsigned bits = 0;
  for (const auto& v : values) {
    out.per_seed.push_back(v.value);
    bits = std::max(bits, v.bits);
  }
  auto& r = out.report;
  r.alpha = alpha;
  r.model = std::move(model);
  r.samples = k;
  r.expected = expected;
  r.estimate = median(out.per_seed);
  r.rel_err = std::abs(*r.estimate - expected) / expected;
  r.seeds = seeds;
  r.bits = bits;
  r.cap = kDefaultReturnCap;
  return out;
}

void require_seeds(const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw Error(ErrorKind::InvalidArgument, "at least one seed is required");
}

}  // namespace

SeedStatistic run_levy(double alpha, std::size_t k, const std::vector<std::uint64_t>& seeds) {
  require_seeds(seeds);
  const Alpha a(alpha);
  const auto values = parallel_map(seeds.size(), [&](std::size_t i) {
    SeedValue v{};
    v.value = with_precision_retry(
        seeds[i], bits_for_returns(alpha, k),
        [&](const CertifiedReal& x) { return estimate_levy(x, a, k); }, 4, &v.bits);
    return v;
  });
  return summarize(alpha, k, seeds, values, levy_limit(alpha), "levy_limit");
}

SeedStatistic run_ratio(double alpha, std::size_t k, const std::vector<std::uint64_t>& seeds) {
  require_seeds(seeds);
  const Alpha a(alpha);
  const auto values = parallel_map(seeds.size(), [&](std::size_t i) {
    SeedValue v{};
    v.value = with_precision_retry(
        seeds[i], bits_for_returns(alpha, k),
        [&](const CertifiedReal& x) { return return_ratio(x, a, k); }, 4, &v.bits);
    return v;
  });
  return summarize(alpha, k, seeds, values, mu_omega_alpha(alpha), "mu_omega_alpha");
}

namespace {

struct SeedSamples {
  std::vector<double> theta;
  unsigned bits;
};

std::vector<SeedSamples> sample_seeds(double alpha, std::size_t total,
                                      const std::vector<std::uint64_t>& seeds,
                                      std::size_t extra) {
  require_seeds(seeds);
  return parallel_map(seeds.size(), [&](std::size_t i) {
    SeedSamples s{};
    const std::size_t n = share_of(total, seeds.size(), i) + extra;
    s.theta = theta_bar_samples(seeds[i], alpha, n, &s.bits);
    return s;
  });
}

void stamp(ComparisonReport& r, const std::vector<std::uint64_t>& seeds, unsigned bits) {
  r.seeds = seeds;
  r.bits = bits;
  r.cap = kDefaultReturnCap;
}

}  // namespace

DLHistRun run_dl_hist(double alpha, std::size_t count, const std::vector<std::uint64_t>& seeds,
                      std::size_t bins) {
  const auto parts = sample_seeds(alpha, count, seeds, 0);
  std::vector<double> samples;
  samples.reserve(count);
  unsigned bits = 0;
  for (const auto& p : parts) {
    samples.insert(samples.end(), p.theta.begin(), p.theta.end());
    bits = std::max(bits, p.bits);
  }
  const auto model =
      alpha <= 0.5 ? DensityModel::uniform(0.0, alpha) : DensityModel::dl_conditional(alpha);
  const auto printed = DensityModel::dl_printed(alpha);
  DLHistRun run{empirical_compare(samples, model, bins), empirical_compare(samples, printed, bins),
                printed.raw_integral(), Histogram::uniform_1d(0.0, alpha, bins)};
  run.report.alpha = alpha;
  stamp(run.report, seeds, bits);
  stamp(run.printed, seeds, bits);
  for (double s : samples) run.histogram.add(s);
  return run;
}

PairHistRun run_pair_hist(double alpha, std::size_t count,
                          const std::vector<std::uint64_t>& seeds, std::size_t bins,
                          std::size_t oracle_sub) {
  const auto parts = sample_seeds(alpha, count, seeds, 1);
  auto histogram = Histogram::uniform_2d(0.0, alpha, bins);
  unsigned bits = 0;
  for (const auto& p : parts) {
    for (std::size_t k = 0; k + 1 < p.theta.size(); ++k) histogram.add(p.theta[k], p.theta[k + 1]);
    bits = std::max(bits, p.bits);
  }
  PairHistRun run{
      compare_histogram(histogram, DensityModel::pair_jager(alpha, Radicand::AlphaInRadical)),
      compare_histogram(histogram, DensityModel::pair_jager(alpha, Radicand::PlainRadical)),
      select_pair_variant(alpha, bins, oracle_sub), std::move(histogram)};
  stamp(run.alpha_in_radical, seeds, bits);
  stamp(run.plain_radical, seeds, bits);
  return run;
}

GeomCheckRun run_geom_check(double alpha, std::size_t count, std::uint64_t seed,
                            std::size_t cap, unsigned bits) {
  GeomCheckRun run{alpha, seed, bits, cap};
  const Alpha a(alpha);
  OmegaSampler sampler(seed, alpha, bits);
  for (std::size_t i = 0; i < count; ++i) {
    const NEPoint p = sampler.next();
    ++run.samples;
    try {
      const auto outcome = tau(p, a);
      const auto* returned = std::get_if<Returned>(&outcome);
      if (returned == nullptr) {
        ++run.uncertified;
        continue;
      }
      const std::size_t g = geometric_tau(p, a, cap);
      if (g == returned->tau) {
        ++run.agree;
      } else {
        ++run.disagree;
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoIntersectingDiscWithinCap) {
        ++run.no_disc;
      } else if (e.kind() == ErrorKind::StraddlesThreshold ||
                 e.kind() == ErrorKind::PrecisionExhausted ||
                 e.kind() == ErrorKind::IndexBeyondCertified) {
        ++run.uncertified;
      } else {
        throw;
      }
    }
  }
  return run;
}

namespace {

bool uncertifiable(const Error& e) {
  return e.kind() == ErrorKind::StraddlesThreshold || e.kind() == ErrorKind::PrecisionExhausted;
}

}  // namespace

DichotomyRun run_dichotomy(double alpha, std::size_t count, std::uint64_t seed, unsigned bits) {
  DichotomyRun run;
  const Alpha a(alpha);
  OmegaSampler sampler(seed, alpha, bits);
  for (std::size_t i = 0; i < count; ++i) {
    const NEPoint p = sampler.next();
    try {
      const Region region = classify_region(p, a);
      const auto outcome = tau(p, a);
      const auto* returned = std::get_if<Returned>(&outcome);
      if (returned == nullptr) {
        ++run.exceptions;
        continue;
      }
      if (region == Region::OmegaPlus) {
        ++run.plus;
        if (returned->tau != 1) ++run.exceptions;
      } else if (region == Region::OmegaMinus) {
        ++run.minus;
        if (returned->tau != 2) ++run.exceptions;
      } else {
        ++run.exceptions;
      }
    } catch (const Error& e) {
      if (!uncertifiable(e)) throw;
      ++run.uncertified;
    }
  }
  return run;
}

std::map<std::size_t, std::size_t> run_tau_counts(double alpha, std::size_t count,
                                                  std::uint64_t seed, unsigned bits) {
  std::map<std::size_t, std::size_t> counts;
  const Alpha a(alpha);
  OmegaSampler sampler(seed, alpha, bits);
  for (std::size_t i = 0; i < count; ++i) {
    const NEPoint p = sampler.next();
    try {
      const auto outcome = tau(p, a);
      const auto* returned = std::get_if<Returned>(&outcome);
      ++counts[returned != nullptr ? returned->tau : 0];
    } catch (const Error& e) {
      if (!uncertifiable(e)) throw;
      ++counts[0];
    }
  }
  return counts;
}

HurwitzRun run_hurwitz(double alpha, std::size_t n, unsigned bits) {
  const CertifiedReal x = golden_ratio_conjugate(bits);
  const Alpha a(alpha);
  HurwitzRun run{alpha, n, bits, {}, 0, n, std::nullopt};
  run.returns = finite_return_scan(cf_expand(x, n + 1), std::nullopt, a, n);
  run.tail_start = run.returns.empty() ? 0 : run.returns.back();
  NEPoint p = step_from_infinity(x);
  for (std::size_t i = 1; i <= run.tail_start; ++i) step_in_place(p, i);
  const auto outcome = tau(p, a, run.tail_cap);
  if (const auto* returned = std::get_if<Returned>(&outcome)) run.tail_tau = returned->tau;
  return run;
}

}  // namespace ratlab
