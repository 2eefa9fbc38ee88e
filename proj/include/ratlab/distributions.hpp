#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratlab/certified_real.hpp"
#include "ratlab/cf.hpp"
#include "ratlab/first_return.hpp"
#include "ratlab/kernels.hpp"
#include "ratlab/pair_map.hpp"

namespace ratlab {

using kernels::Radicand;

std::string_view to_string(Radicand radicand);

// c_alpha = 1/(log 2 * mu(Omega_alpha)).
double c_alpha(double alpha);

// Classical Doeblin-Lenstra law on (0, 1): 1/log 2 below 1/2, (1/z - 1)/log 2
// above.
double dl_density(double zeta);
double dl_cdf(double zeta);

// The same law conditioned on (0, alpha). Uniform 1/alpha when alpha <= 1/2.
double dl_conditional_density(double zeta, double alpha);
double dl_conditional_cdf(double zeta, double alpha);

// c_alpha (2 log 2)^-1 zeta^-1 (1 - |1 - 2 zeta|): the conditional law as printed.
// Integrates to 1/log 2, not 1; kept as a flagged alternate.
double dl_printed_density(double zeta, double alpha);

// Density of consecutive pairs (theta_bar_k, theta_bar_{k+1}) on Lambda_alpha,
// alpha >= 1/2, with R = 4 alpha w z (AlphaInRadical) or 4 w z (PlainRadical):
//   c_alpha / sqrt(1 - R)                           on the plus region,
//   c_alpha (1/sqrt(1 - R) + 1/sqrt(1 + R))         on the minus region.
// Throws DomainViolation outside Lambda_alpha.
double pair_density(double w, double z, double alpha, Radicand radicand);

// Almost-everywhere limit of log(q_bar_k)/k.
double levy_limit(double alpha);

// A closed-form density together with the constant that makes it integrate to
// one over its support. The integral of the formula as written is checked by
// quadrature at construction; when it misses 1 by more than 1e-6 the model
// renormalizes and reports itself as flagged.
class DensityModel {
 public:
  enum class Kind { DLConditional, DLPrinted, PairJager, UniformOnInterval };

  static DensityModel dl_conditional(double alpha);
  static DensityModel dl_printed(double alpha);
  static DensityModel pair_jager(double alpha, Radicand radicand);
  static DensityModel uniform(double lo, double hi);

  Kind kind() const { return kind_; }
  int dims() const { return kind_ == Kind::PairJager ? 2 : 1; }
  double alpha() const { return alpha_; }
  Radicand radicand() const { return radicand_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

  double raw_integral() const { return raw_integral_; }
  double normalization() const { return normalization_; }
  bool flagged() const { return flagged_; }

  std::string name() const;
  std::string variant() const;
  std::string description() const;

  // 1-D models.
  double density(double zeta) const;
  double cdf(double zeta) const;
  double mass(double a, double b) const;

  // 2-D models.
  double density(double w, double z) const;
  double mass(double w0, double w1, double z0, double z1) const;

 private:
  DensityModel(Kind kind, double alpha, Radicand radicand, double lo, double hi);
  void calibrate();
  double raw_mass_1d(double a, double b) const;
  double raw_mass_2d(double w0, double w1, double z0, double z1) const;

  Kind kind_;
  double alpha_;
  Radicand radicand_;
  double lo_;
  double hi_;
  double raw_integral_ = 1.0;
  double normalization_ = 1.0;
  bool flagged_ = false;
};

// Fixed-edge histogram in one or two dimensions (square grid over
// [lo, hi]^2). Samples outside the edges are counted in `total` only.
class Histogram {
 public:
  static Histogram uniform_1d(double lo, double hi, std::size_t bins);
  static Histogram uniform_2d(double lo, double hi, std::size_t bins);

  int dims() const { return dims_; }
  std::size_t bins() const { return edges_.size() - 1; }
  const std::vector<double>& edges() const { return edges_; }

  void add(double value);
  void add(double w, double z);
  // Associative and commutative; requires identical edges.
  void merge(const Histogram& other);

  std::uint64_t count(std::size_t i) const;
  std::uint64_t count(std::size_t i, std::size_t j) const;
  std::uint64_t total() const { return total_; }
  std::uint64_t binned() const;

 private:
  Histogram(int dims, std::vector<double> edges);
  std::size_t locate(double value) const;  // bins() when out of range

  int dims_;
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct ComparisonReport {
  double alpha = 0.0;
  std::string model;
  std::string variant;
  std::size_t samples = 0;
  std::optional<double> l1;
  std::optional<double> ks;
  std::optional<double> expected;
  std::optional<double> estimate;
  std::optional<double> rel_err;
  std::vector<std::uint64_t> seeds;
  std::optional<unsigned> bits;
  std::optional<std::size_t> cap;

  nlohmann::ordered_json to_json() const;
};

inline constexpr std::size_t kMinComparisonSamples = 10'000;

// L1 distance between the normalized histogram and the model's bin masses,
// plus the Kolmogorov-Smirnov statistic (exact sup over the sorted sample in
// 1-D; sup over the bin-corner grid of cumulative differences in 2-D).
// Throws InsufficientSamples below kMinComparisonSamples.
ComparisonReport empirical_compare(std::span<const double> samples, const DensityModel& model,
                                   std::size_t bins);
ComparisonReport empirical_compare(std::span<const PairPoint> samples,
                                   const DensityModel& model, std::size_t bins);

// Same statistics from an already merged 2-D histogram (KS on the grid).
ComparisonReport compare_histogram(const Histogram& histogram, const DensityModel& model);

// Bin masses of the pushforward of mu_alpha under the pair map, computed
// without the closed-form density: the preimage of each grid cell under both
// branches is reached through pair_inverse / pair_inverse_minus, the Jacobians
// are central finite differences, and region membership is checked on the
// Omega side. Midpoint rule with `sub` x `sub` nodes per cell.
std::vector<double> pushforward_masses(double alpha, std::size_t bins, std::size_t sub);

struct VariantSelection {
  double l1_alpha_in_radical;
  double l1_plain_radical;
  Radicand accepted;
};

// Scores both readings of the pair density against pushforward_masses.
VariantSelection select_pair_variant(double alpha, std::size_t bins, std::size_t sub = 8);

// log(q_bar_k)/k.
double estimate_levy(const CFExpansion& cf, const Alpha& alpha, std::size_t k);
double estimate_levy(const CertifiedReal& x, const Alpha& alpha, std::size_t k);

// k/n_k along the streamed return orbit.
double return_ratio(const CertifiedReal& x, const Alpha& alpha, std::size_t k);

}  // namespace ratlab
