#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include <map>

#include "ratlab/certified_real.hpp"
#include "ratlab/distributions.hpp"
#include "ratlab/pair_map.hpp"
#include "ratlab/error.hpp"
#include "ratlab/first_return.hpp"
#include "ratlab/hyper.hpp"
#include "ratlab/natural_extension.hpp"
#include "ratlab/orbit.hpp"

namespace ratlab {

// Worker count: RATLAB_THREADS when set to a positive integer, otherwise the
// number of logical cores.
unsigned thread_count();

// out[i] = f(i) for i < n, evaluated on thread_count() workers. The result
// does not depend on the worker count. The first exception (by index) is
// rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// Uniform double in [0, 1) from the top 53 bits of one generator output.
double unit_double(std::mt19937_64& rng);

// Draws points of Omega_alpha distributed according to mu_alpha, certified
// exactly: x ~ Gauss measure, then w = 1/(x - y) uniform on
// (0, 1/(1 + x)) restricted to w < alpha. x is a dyadic interval of width
// 2^-bits around the double draw; y is an exact binary rational. Draws whose
// membership cannot be certified are redrawn.
class OmegaSampler {
 public:
  OmegaSampler(std::uint64_t seed, double alpha, unsigned bits = 256);

  NEPoint next();

  // Draws rejected so far (outside Omega_alpha or uncertifiable).
  std::size_t rejected() const { return rejected_; }

 private:
  std::mt19937_64 rng_;
  Alpha alpha_;
  unsigned bits_;
  std::size_t rejected_ = 0;
};

// Runs f(x) for x = sample_irrational(seed, bits), doubling bits after every
// PrecisionExhausted, at most `attempts` times. The bits that worked are
// stored in *used_bits.
template <class F>
auto with_precision_retry(std::uint64_t seed, unsigned bits, F f, unsigned attempts = 4,
                          unsigned* used_bits = nullptr) -> decltype(f(sample_irrational(0, 64))) {
  for (unsigned attempt = 1;; ++attempt) {
    try {
      auto result = f(sample_irrational(seed, bits));
      if (used_bits != nullptr) *used_bits = bits;
      return result;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || attempt >= attempts) throw;
      bits *= 2;
    }
  }
}

// First `count` values theta_bar_k (midpoints of their enclosures) along the
// return orbit of sample_irrational(seed, ...).
std::vector<double> theta_bar_samples(std::uint64_t seed, double alpha, std::size_t count,
                                      unsigned* used_bits = nullptr);

// Same, starting from a given real.
std::vector<double> theta_bar_samples(const CertifiedReal& x, double alpha, std::size_t count);

// Consecutive pairs (theta_bar_k, theta_bar_{k+1}), k = 1..count.
std::vector<PairPoint> theta_pairs(const CertifiedReal& x, double alpha, std::size_t count);

std::vector<std::uint64_t> seed_list(std::uint64_t base, std::size_t count);
double median(std::vector<double> values);

// Splits `total` across `parts` as evenly as possible, earlier parts first.
std::size_t share_of(std::size_t total, std::size_t parts, std::size_t index);

struct SeedStatistic {
  ComparisonReport report;
  std::vector<double> per_seed;
};

// Median over seeds of log(q_bar_k)/k against the closed-form limit.
SeedStatistic run_levy(double alpha, std::size_t k, const std::vector<std::uint64_t>& seeds);

// Median over seeds of k/n_k against mu(Omega_alpha).
SeedStatistic run_ratio(double alpha, std::size_t k, const std::vector<std::uint64_t>& seeds);

struct DLHistRun {
  ComparisonReport report;   // uniform on (0, alpha) when alpha <= 1/2, else conditional D-L
  ComparisonReport printed;  // flagged printed alternate
  double printed_raw_integral;
  Histogram histogram;
};

// `count` theta_bar samples split across the seeds.
DLHistRun run_dl_hist(double alpha, std::size_t count, const std::vector<std::uint64_t>& seeds,
                      std::size_t bins);

struct PairHistRun {
  ComparisonReport alpha_in_radical;
  ComparisonReport plain_radical;
  VariantSelection oracle;
  Histogram histogram;
};

// `count` consecutive theta_bar pairs split across the seeds, compared on a
// bins x bins grid over [0, alpha]^2 with both density readings.
PairHistRun run_pair_hist(double alpha, std::size_t count,
                          const std::vector<std::uint64_t>& seeds, std::size_t bins,
                          std::size_t oracle_sub = 8);

struct GeomCheckRun {
  double alpha;
  std::uint64_t seed;
  unsigned bits;
  std::size_t cap;
  std::size_t samples = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t uncertified = 0;  // straddles or precision loss
  std::size_t no_disc = 0;      // no convergent horodisc within the cap
};

// geometric_tau against tau on `count` mu_alpha-distributed points.
GeomCheckRun run_geom_check(double alpha, std::size_t count, std::uint64_t seed,
                            std::size_t cap = kDefaultDiscCap, unsigned bits = 256);

struct DichotomyRun {
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t exceptions = 0;   // tau other than 1 on OmegaPlus or 2 on OmegaMinus
  std::size_t uncertified = 0;  // region or tau could not be certified
};

DichotomyRun run_dichotomy(double alpha, std::size_t count, std::uint64_t seed,
                           unsigned bits = 256);

// Observed return times and their counts; uncertified draws under key 0.
std::map<std::size_t, std::size_t> run_tau_counts(double alpha, std::size_t count,
                                                  std::uint64_t seed, unsigned bits = 256);

struct HurwitzRun {
  double alpha;
  std::size_t n;
  unsigned bits;
  std::vector<std::size_t> returns;
  // The plain orbit restarted after the last return.
  std::size_t tail_start;
  std::size_t tail_cap;
  std::optional<std::size_t> tail_tau;  // empty: no return within tail_cap
};

// Returns of the golden-ratio orbit T^n(x_0, y_0), n = 1..N, to Omega_alpha,
// then the return time of the orbit after the last return.
HurwitzRun run_hurwitz(double alpha, std::size_t n, unsigned bits);

}  // namespace ratlab
