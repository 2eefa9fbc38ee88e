#include "ratlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kernels/formulas.hpp"
#include "ratlab/error.hpp"
#include "ratlab/orbit.hpp"

namespace ratlab {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNormalizationTolerance = 1e-6;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  }
}

void require_pair_alpha(double alpha) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) {
    throw Error(ErrorKind::DomainViolation, "pair densities require 1/2 <= alpha <= 1");
  }
}

template <class F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

// Integral of f over [a, b], split at the points in `cuts` lying inside.
template <class F>
double integrate_piecewise(F f, double a, double b, std::vector<double> cuts) {
  if (!(b > a)) return 0.0;
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double left = a;
  for (double c : cuts) {
    if (c <= left || c > b) continue;
    total += integrate(f, left, c);
    left = c;
  }
  return total;
}

// Integral over [z0, z1] of 1/sqrt(1 - k z) and 1/sqrt(1 + k z).
double inv_sqrt_one_minus_integral(double k, double z0, double z1) {
  if (!(z1 > z0)) return 0.0;
  return 2.0 * (z1 - z0) / (std::sqrt(1.0 - k * z0) + std::sqrt(1.0 - k * z1));
}

double inv_sqrt_one_plus_integral(double k, double z0, double z1) {
  if (!(z1 > z0)) return 0.0;
  return 2.0 * (z1 - z0) / (std::sqrt(1.0 + k * z0) + std::sqrt(1.0 + k * z1));
}

// Upper edge in z of the minus part of Lambda_alpha at abscissa w, or -1 when
// the column has none.
double minus_edge(double w, double alpha) {
  const double t = 1.0 - 4.0 * alpha * w;
  if (t < 0.0) return -1.0;
  return w - alpha + std::sqrt(t);
}

// w where minus_edge(w) = c.
std::vector<double> minus_edge_crossings(double c, double alpha) {
  std::vector<double> out;
  const double disc = 1.0 - 4.0 * alpha * c;
  if (disc < 0.0) return out;
  for (double s : {-1.0, 1.0}) {
    const double w = (c - alpha) + s * std::sqrt(disc);
    if (c + alpha - w >= 0.0) out.push_back(w);
  }
  return out;
}

}  // namespace

std::string_view to_string(Radicand radicand) {
  return radicand == Radicand::AlphaInRadical ? "alpha_in_radical" : "plain_radical";
}

double c_alpha(double alpha) { return 1.0 / (kLn2 * mu_omega_alpha(alpha)); }

double dl_density(double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) return 0.0;
  if (zeta <= 0.5) return 1.0 / kLn2;
  return (1.0 / zeta - 1.0) / kLn2;
}

double dl_cdf(double zeta) {
  if (zeta <= 0.0) return 0.0;
  if (zeta <= 0.5) return zeta / kLn2;
  if (zeta < 1.0) return (1.0 - zeta + std::log(2.0 * zeta)) / kLn2;
  return 1.0;
}

double dl_conditional_density(double zeta, double alpha) {
  require_alpha(alpha);
  if (!(zeta > 0.0 && zeta < alpha)) return 0.0;
  return dl_density(zeta) / mu_omega_alpha(alpha);
}

double dl_conditional_cdf(double zeta, double alpha) {
  require_alpha(alpha);
  return dl_cdf(std::min(zeta, alpha)) / mu_omega_alpha(alpha);
}

double dl_printed_density(double zeta, double alpha) {
  require_alpha(alpha);
  if (!(zeta > 0.0 && zeta < alpha)) return 0.0;
  return c_alpha(alpha) / (2.0 * kLn2) / zeta * (1.0 - std::abs(1.0 - 2.0 * zeta));
}

double pair_density(double w, double z, double alpha, Radicand radicand) {
  require_pair_alpha(alpha);
  if (!kernels::formula::in_lambda(w, z, alpha)) {
    throw Error(ErrorKind::DomainViolation, "pair_density: (w, z) lies outside Lambda_alpha");
  }
  return kernels::formula::density(w, z, alpha, c_alpha(alpha), radicand);
}

double levy_limit(double alpha) {
  return std::numbers::pi * std::numbers::pi / (12.0 * kLn2 * mu_omega_alpha(alpha));
}

// DensityModel ---------------------------------------------------------------

DensityModel::DensityModel(Kind kind, double alpha, Radicand radicand, double lo, double hi)
    : kind_(kind), alpha_(alpha), radicand_(radicand), lo_(lo), hi_(hi) {}

DensityModel DensityModel::dl_conditional(double alpha) {
  require_alpha(alpha);
  DensityModel m(Kind::DLConditional, alpha, Radicand::PlainRadical, 0.0, alpha);
  m.calibrate();
  return m;
}

DensityModel DensityModel::dl_printed(double alpha) {
  require_alpha(alpha);
  DensityModel m(Kind::DLPrinted, alpha, Radicand::PlainRadical, 0.0, alpha);
  m.calibrate();
  return m;
}

DensityModel DensityModel::pair_jager(double alpha, Radicand radicand) {
  require_pair_alpha(alpha);
  DensityModel m(Kind::PairJager, alpha, radicand, 0.0, alpha);
  m.calibrate();
  return m;
}

DensityModel DensityModel::uniform(double lo, double hi) {
  if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "uniform: requires lo < hi");
  DensityModel m(Kind::UniformOnInterval, hi, Radicand::PlainRadical, lo, hi);
  m.calibrate();
  return m;
}

void DensityModel::calibrate() {
  raw_integral_ = dims() == 1 ? raw_mass_1d(lo_, hi_) : raw_mass_2d(lo_, hi_, lo_, hi_);
  flagged_ = std::abs(raw_integral_ - 1.0) > kNormalizationTolerance;
  normalization_ = flagged_ ? 1.0 / raw_integral_ : 1.0;
}

std::string DensityModel::name() const {
  switch (kind_) {
    case Kind::DLConditional: return "dl_conditional";
    case Kind::DLPrinted: return "dl_printed";
    case Kind::PairJager: return "pair_jager";
    case Kind::UniformOnInterval: return "uniform";
  }
  return "unknown";
}

std::string DensityModel::variant() const {
  if (kind_ == Kind::PairJager) return std::string(to_string(radicand_));
  return "";
}

std::string DensityModel::description() const {
  std::string text = name();
  if (kind_ == Kind::PairJager) text += "[" + variant() + "]";
  if (flagged_) {
    text += "; formula integrates to " + std::to_string(raw_integral_) +
            ", renormalized by " + std::to_string(normalization_);
  }
  return text;
}

double DensityModel::density(double zeta) const {
  double raw = 0.0;
  switch (kind_) {
    case Kind::DLConditional: raw = dl_conditional_density(zeta, alpha_); break;
    case Kind::DLPrinted: raw = dl_printed_density(zeta, alpha_); break;
    case Kind::UniformOnInterval: raw = (zeta > lo_ && zeta < hi_) ? 1.0 / (hi_ - lo_) : 0.0; break;
    case Kind::PairJager:
      throw Error(ErrorKind::InvalidArgument, "density(zeta) on a 2-D model");
  }
  return normalization_ * raw;
}

double DensityModel::cdf(double zeta) const {
  if (zeta <= lo_) return 0.0;
  if (zeta >= hi_) return 1.0;
  if (kind_ == Kind::DLConditional && !flagged_) return dl_conditional_cdf(zeta, alpha_);
  if (kind_ == Kind::UniformOnInterval) return (zeta - lo_) / (hi_ - lo_);
  // The printed form is c_alpha times the classical density on (0, alpha).
  if (kind_ == Kind::DLPrinted) return normalization_ * c_alpha(alpha_) * dl_cdf(zeta);
  return normalization_ * raw_mass_1d(lo_, zeta);
}

double DensityModel::mass(double a, double b) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(b > a)) return 0.0;
  return cdf(b) - cdf(a);
}

double DensityModel::raw_mass_1d(double a, double b) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(b > a)) return 0.0;
  switch (kind_) {
    case Kind::UniformOnInterval: return (b - a) / (hi_ - lo_);
    case Kind::DLConditional:
      return integrate_piecewise([&](double t) { return dl_conditional_density(t, alpha_); }, a,
                                 b, {0.5});
    case Kind::DLPrinted:
      return integrate_piecewise([&](double t) { return dl_printed_density(t, alpha_); }, a, b,
                                 {0.5});
    case Kind::PairJager: break;
  }
  throw Error(ErrorKind::InvalidArgument, "1-D mass on a 2-D model");
}

double DensityModel::density(double w, double z) const {
  if (kind_ != Kind::PairJager) {
    throw Error(ErrorKind::InvalidArgument, "density(w, z) on a 1-D model");
  }
  return normalization_ * kernels::formula::density(w, z, alpha_, c_alpha(alpha_), radicand_);
}

double DensityModel::mass(double w0, double w1, double z0, double z1) const {
  if (kind_ != Kind::PairJager) {
    throw Error(ErrorKind::InvalidArgument, "mass over a rectangle on a 1-D model");
  }
  return normalization_ * raw_mass_2d(w0, w1, z0, z1);
}

// Inner integrals over z are closed-form; the outer one is split wherever a
// clipping edge of Lambda_alpha crosses the rectangle.
double DensityModel::raw_mass_2d(double w0, double w1, double z0, double z1) const {
  const double alpha = alpha_;
  w0 = std::max(w0, 0.0);
  w1 = std::min(w1, alpha);
  z0 = std::max(z0, 0.0);
  z1 = std::min(z1, alpha);
  if (!(w1 > w0 && z1 > z0)) return 0.0;
  const double c = c_alpha(alpha);
  const double kscale = radicand_ == Radicand::AlphaInRadical ? 4.0 * alpha : 4.0;

  auto column = [&](double w) {
    const double k = kscale * w;
    const double top = std::min(z1, 1.0 - w);
    double value = inv_sqrt_one_minus_integral(k, z0, top);
    const double edge = minus_edge(w, alpha);
    if (edge > z0) value += inv_sqrt_one_plus_integral(k, z0, std::min(top, edge));
    return c * value;
  };

  std::vector<double> cuts{1.0 - z0, 1.0 - z1, 0.5, 1.0 / (4.0 * alpha)};
  for (double level : {z0, z1}) {
    for (double w : minus_edge_crossings(level, alpha)) cuts.push_back(w);
  }
  return integrate_piecewise(column, w0, w1, cuts);
}

// Histogram -----------------------------------------------------------------

Histogram::Histogram(int dims, std::vector<double> edges)
    : dims_(dims), edges_(std::move(edges)) {
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "histogram edges must increase strictly");
    }
  }
  const std::size_t n = bins();
  counts_.assign(dims_ == 1 ? n : n * n, 0);
}

namespace {

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) {
    throw Error(ErrorKind::InvalidArgument, "histogram needs bins >= 1 and lo < hi");
  }
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  edges[bins] = hi;
  return edges;
}

}  // namespace

Histogram Histogram::uniform_1d(double lo, double hi, std::size_t bins) {
  return Histogram(1, uniform_edges(lo, hi, bins));
}

Histogram Histogram::uniform_2d(double lo, double hi, std::size_t bins) {
  return Histogram(2, uniform_edges(lo, hi, bins));
}

std::size_t Histogram::locate(double value) const {
  const std::size_t n = bins();
  if (!(value >= edges_.front() && value <= edges_.back())) return n;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
  const auto i = static_cast<std::size_t>(it - edges_.begin());
  return i == 0 ? 0 : std::min(i - 1, n - 1);
}

void Histogram::add(double value) {
  ++total_;
  const std::size_t i = locate(value);
  if (i < bins()) ++counts_[i];
}

void Histogram::add(double w, double z) {
  ++total_;
  const std::size_t i = locate(w);
  const std::size_t j = locate(z);
  if (i < bins() && j < bins()) ++counts_[i * bins() + j];
}

void Histogram::merge(const Histogram& other) {
  if (dims_ != other.dims_ || edges_ != other.edges_) {
    throw Error(ErrorKind::InvalidArgument, "histogram merge needs identical edges");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

std::uint64_t Histogram::count(std::size_t i) const { return counts_.at(i); }

std::uint64_t Histogram::count(std::size_t i, std::size_t j) const {
  return counts_.at(i * bins() + j);
}

std::uint64_t Histogram::binned() const {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

// Comparison ----------------------------------------------------------------

nlohmann::ordered_json ComparisonReport::to_json() const {
  auto opt = [](const auto& v) -> nlohmann::ordered_json {
    if (v) return *v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["model"] = model;
  j["variant"] = variant;
  j["samples"] = samples;
  j["l1"] = opt(l1);
  j["ks"] = opt(ks);
  j["expected"] = opt(expected);
  j["estimate"] = opt(estimate);
  j["rel_err"] = opt(rel_err);
  j["seeds"] = seeds;
  if (bits) j["bits"] = *bits;
  if (cap) j["cap"] = *cap;
  return j;
}

namespace {

void require_samples(std::size_t n) {
  if (n < kMinComparisonSamples) {
    throw Error(ErrorKind::InsufficientSamples,
                "comparison needs at least " + std::to_string(kMinComparisonSamples) +
                    " samples, got " + std::to_string(n));
  }
}

ComparisonReport base_report(const DensityModel& model, std::size_t samples) {
  ComparisonReport r;
  r.alpha = model.alpha();
  r.model = model.name();
  r.variant = model.variant();
  r.samples = samples;
  return r;
}

}  // namespace

ComparisonReport empirical_compare(std::span<const double> samples, const DensityModel& model,
                                   std::size_t bins) {
  if (model.dims() != 1) throw Error(ErrorKind::InvalidArgument, "1-D samples, 2-D model");
  require_samples(samples.size());
  ComparisonReport report = compare_histogram(
      [&] {
        auto h = Histogram::uniform_1d(model.support_lo(), model.support_hi(), bins);
        for (double s : samples) h.add(s);
        return h;
      }(),
      model);

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = model.cdf(sorted[i]);
    ks = std::max(ks, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  report.ks = std::clamp(ks, 0.0, 1.0);
  return report;
}

ComparisonReport empirical_compare(std::span<const PairPoint> samples,
                                   const DensityModel& model, std::size_t bins) {
  if (model.dims() != 2) throw Error(ErrorKind::InvalidArgument, "2-D samples, 1-D model");
  require_samples(samples.size());
  auto h = Histogram::uniform_2d(model.support_lo(), model.support_hi(), bins);
  for (const auto& p : samples) h.add(p.w, p.z);
  return compare_histogram(h, model);
}

ComparisonReport compare_histogram(const Histogram& histogram, const DensityModel& model) {
  if (histogram.dims() != model.dims()) {
    throw Error(ErrorKind::InvalidArgument, "histogram and model dimensions differ");
  }
  require_samples(histogram.total());
  ComparisonReport report = base_report(model, histogram.total());
  const auto& e = histogram.edges();
  const std::size_t n = histogram.bins();
  const double total = static_cast<double>(histogram.total());
  const double outside = static_cast<double>(histogram.total() - histogram.binned()) / total;

  double l1 = outside;
  double ks = 0.0;
  if (histogram.dims() == 1) {
    double emp = 0.0, mod = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = static_cast<double>(histogram.count(i)) / total;
      const double m = model.mass(e[i], e[i + 1]);
      l1 += std::abs(p - m);
      emp += p;
      mod += m;
      ks = std::max(ks, std::abs(emp - mod));
    }
  } else {
    std::vector<double> cum_emp((n + 1) * (n + 1), 0.0), cum_mod((n + 1) * (n + 1), 0.0);
    auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double p = static_cast<double>(histogram.count(i, j)) / total;
        const double m = model.mass(e[i], e[i + 1], e[j], e[j + 1]);
        l1 += std::abs(p - m);
        cum_emp[at(i + 1, j + 1)] =
            p + cum_emp[at(i, j + 1)] + cum_emp[at(i + 1, j)] - cum_emp[at(i, j)];
        cum_mod[at(i + 1, j + 1)] =
            m + cum_mod[at(i, j + 1)] + cum_mod[at(i + 1, j)] - cum_mod[at(i, j)];
        ks = std::max(ks, std::abs(cum_emp[at(i + 1, j + 1)] - cum_mod[at(i + 1, j + 1)]));
      }
    }
  }
  report.l1 = l1;
  report.ks = std::clamp(ks, 0.0, 1.0);
  return report;
}

// Pushforward oracle --------------------------------------------------------

namespace {

using InverseFn = void (*)(double, double, double&, double&);

// f_alpha(x, y) |det dH| at (w, z) for one inverse branch, or 0 when the
// preimage leaves the branch's region of Omega_alpha.
double branch_contribution(InverseFn inverse, Region region, double w, double z, double alpha,
                           double c) {
  double x, y;
  inverse(w, z, x, y);
  if (!(x > 0.0 && x < 1.0 && y < -1.0)) return 0.0;
  if (classify_region(x, y, alpha) != region) return 0.0;
  const double h = 1e-6 * std::min({w, z, 1e3});
  double xp, yp, xm, ym;
  inverse(w + h, z, xp, yp);
  inverse(w - h, z, xm, ym);
  const double xw = (xp - xm) / (2.0 * h), yw = (yp - ym) / (2.0 * h);
  inverse(w, z + h, xp, yp);
  inverse(w, z - h, xm, ym);
  const double xz = (xp - xm) / (2.0 * h), yz = (yp - ym) / (2.0 * h);
  if (!(std::isfinite(xw) && std::isfinite(yw) && std::isfinite(xz) && std::isfinite(yz))) {
    return 0.0;
  }
  const double jac = std::abs(xw * yz - xz * yw);
  const double d = x - y;
  return c / (d * d) * jac;
}

}  // namespace

std::vector<double> pushforward_masses(double alpha, std::size_t bins, std::size_t sub) {
  require_pair_alpha(alpha);
  if (bins == 0 || sub == 0) throw Error(ErrorKind::InvalidArgument, "bins and sub must be >= 1");
  const double c = c_alpha(alpha);
  const double cell = alpha / static_cast<double>(bins);
  const double step = cell / static_cast<double>(sub);
  std::vector<double> masses(bins * bins, 0.0);
  for (std::size_t i = 0; i < bins; ++i) {
    for (std::size_t j = 0; j < bins; ++j) {
      double sum = 0.0;
      for (std::size_t a = 0; a < sub; ++a) {
        const double w = cell * static_cast<double>(i) + step * (static_cast<double>(a) + 0.5);
        for (std::size_t b = 0; b < sub; ++b) {
          const double z = cell * static_cast<double>(j) + step * (static_cast<double>(b) + 0.5);
          if ((4.0 * w) * z < 1.0) {
            sum += branch_contribution(kernels::formula::inverse_plus, Region::OmegaPlus, w, z,
                                       alpha, c);
          }
          sum += branch_contribution(kernels::formula::inverse_minus, Region::OmegaMinus, w, z,
                                     alpha, c);
        }
      }
      masses[i * bins + j] = sum * step * step;
    }
  }
  return masses;
}

VariantSelection select_pair_variant(double alpha, std::size_t bins, std::size_t sub) {
  const auto oracle = pushforward_masses(alpha, bins, sub);
  const double cell = alpha / static_cast<double>(bins);
  auto score = [&](Radicand r) {
    const auto model = DensityModel::pair_jager(alpha, r);
    double l1 = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
      for (std::size_t j = 0; j < bins; ++j) {
        const double m = model.mass(cell * static_cast<double>(i), cell * static_cast<double>(i + 1),
                                    cell * static_cast<double>(j), cell * static_cast<double>(j + 1));
        l1 += std::abs(m - oracle[i * bins + j]);
      }
    }
    return l1;
  };
  VariantSelection out;
  out.l1_alpha_in_radical = score(Radicand::AlphaInRadical);
  out.l1_plain_radical = score(Radicand::PlainRadical);
  out.accepted = out.l1_plain_radical <= out.l1_alpha_in_radical ? Radicand::PlainRadical
                                                                 : Radicand::AlphaInRadical;
  return out;
}

// Orbit statistics ----------------------------------------------------------

double estimate_levy(const CFExpansion& cf, const Alpha& alpha, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "estimate_levy: k must be >= 1");
  const auto seq = theta_bar(cf, alpha, k);
  return log_abs(seq.entries.back().q) / static_cast<double>(k);
}

double estimate_levy(const CertifiedReal& x, const Alpha& alpha, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "estimate_levy: k must be >= 1");
  ReturnWalker walker(x, alpha);
  const ReturnSample* last = nullptr;
  for (std::size_t i = 0; i < k; ++i) last = &walker.next();
  return last->log_q / static_cast<double>(k);
}

double return_ratio(const CertifiedReal& x, const Alpha& alpha, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "return_ratio: k must be >= 1");
  ReturnWalker walker(x, alpha);
  const ReturnSample* last = nullptr;
  for (std::size_t i = 0; i < k; ++i) last = &walker.next();
  return static_cast<double>(k) / static_cast<double>(last->n);
}

}  // namespace ratlab
