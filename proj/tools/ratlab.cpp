// ratlab: experiment driver. Every subcommand prints one JSON document on
// stdout; failures print {"error": {...}} and exit with status 2.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratlab/distributions.hpp"
#include "ratlab/error.hpp"
#include "ratlab/experiments.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ratlab;

namespace {

constexpr int kExitFailure = 2;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string alpha_tag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

void validate_alphas(const std::vector<double>& alphas, double min = 0.0) {
  if (alphas.empty()) throw Error(ErrorKind::InvalidArgument, "at least one --alpha is required");
  for (double a : alphas) {
    if (!(a > min && a <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "alpha " + format_double(a) + " is out of range");
    }
  }
}

json histogram_json_1d(const Histogram& h) {
  json counts = json::array();
  for (std::size_t i = 0; i < h.bins(); ++i) counts.push_back(h.count(i));
  return json{{"edges", h.edges()}, {"counts", counts}, {"total", h.total()}};
}

json histogram_json_2d(const Histogram& h) {
  json rows = json::array();
  for (std::size_t i = 0; i < h.bins(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < h.bins(); ++j) row.push_back(h.count(i, j));
    rows.push_back(row);
  }
  return json{{"lo", h.edges().front()}, {"hi", h.edges().back()}, {"bins", h.bins()},
              {"counts", rows}, {"total", h.total()}};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// pairs ---------------------------------------------------------------------

struct PairsOptions {
  std::string preset;
  std::string x_decimal;
  std::string x_file;
  std::vector<double> alphas;
  std::size_t count = 20000;
  std::string out;
  bool svg = false;
};

fs::path with_alpha_suffix(const fs::path& out, double alpha, bool several) {
  if (!several) return out;
  fs::path p = out;
  p.replace_filename(out.stem().string() + "_a" + alpha_tag(alpha) + out.extension().string());
  return p;
}

void write_csv(const fs::path& path, const std::vector<PairPoint>& pairs) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  f << "k,w,z\n";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    f << (k + 1) << ',' << format_double(pairs[k].w) << ',' << format_double(pairs[k].z) << '\n';
  }
}

void write_svg(const fs::path& path, const std::vector<PairPoint>& pairs, double alpha) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  const double scale = 600.0 / alpha;
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
       "viewBox=\"0 0 600 600\">\n";
  f << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  f << "<path d=\"M0 600H600M0 600V0\" stroke=\"black\" stroke-width=\"1\"/>\n";
  f << "<g fill=\"black\">\n";
  char buf[96];
  for (const auto& p : pairs) {
    std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"1\" height=\"1\"/>\n",
                  p.w * scale, 600.0 - p.z * scale);
    f << buf;
  }
  f << "</g>\n</svg>\n";
}

json run_pairs(PairsOptions o) {
  CertifiedReal x = [&] {
    if (!o.preset.empty()) {
      if (o.preset != "fig1") throw Error(ErrorKind::InvalidArgument, "unknown preset " + o.preset);
      return CertifiedReal::from_decimal_file(fs::path(RATLAB_DATA_DIR) / "fig1_x.txt");
    }
    if (!o.x_file.empty()) return CertifiedReal::from_decimal_file(o.x_file);
    if (!o.x_decimal.empty()) return CertifiedReal::from_decimal(o.x_decimal);
    throw Error(ErrorKind::InvalidArgument, "one of --preset, --x, --x-file is required");
  }();
  if (o.alphas.empty() && o.preset == "fig1") o.alphas = {1.0, 0.7, 0.5};
  validate_alphas(o.alphas);
  if (o.count == 0) throw Error(ErrorKind::InvalidArgument, "--count must be >= 1");

  json runs = json::array();
  const bool several = o.alphas.size() > 1;
  for (double alpha : o.alphas) {
    const auto pairs = theta_pairs(x, alpha, o.count);
    const fs::path csv = with_alpha_suffix(o.out, alpha, several);
    write_csv(csv, pairs);
    json run{{"alpha", alpha}, {"count", pairs.size()}, {"csv", csv.string()}};
    if (o.svg) {
      fs::path svg = csv;
      svg.replace_extension(".svg");
      write_svg(svg, pairs, alpha);
      run["svg"] = svg.string();
    } else {
      run["svg"] = nullptr;
    }
    std::size_t inside = 0;
    for (const auto& p : pairs) inside += in_lambda(p, alpha) ? 1 : 0;
    run["in_lambda"] = inside;
    runs.push_back(run);
  }
  return json{{"command", "pairs"},
              {"source", o.preset.empty() ? (o.x_file.empty() ? "decimal" : "file") : o.preset},
              {"bits", x.bits()},
              {"cap", kDefaultReturnCap},
              {"runs", runs}};
}

// statistics ----------------------------------------------------------------

struct SeedOptions {
  std::vector<double> alphas;
  std::size_t k = 10000;
  std::size_t seeds = 20;
  std::uint64_t seed_base = 1;
};

json seed_statistic_json(const SeedStatistic& s, bool with_abs) {
  json j = s.report.to_json();
  if (with_abs) j["abs_err"] = std::abs(*s.report.estimate - *s.report.expected);
  j["per_seed"] = s.per_seed;
  return j;
}

json run_levy_cmd(const SeedOptions& o) {
  validate_alphas(o.alphas);
  json reports = json::array();
  for (double a : o.alphas) {
    reports.push_back(seed_statistic_json(run_levy(a, o.k, seed_list(o.seed_base, o.seeds)), false));
  }
  return json{{"command", "levy"}, {"k", o.k}, {"reports", reports}};
}

json run_ratio_cmd(const SeedOptions& o) {
  validate_alphas(o.alphas);
  json reports = json::array();
  for (double a : o.alphas) {
    reports.push_back(seed_statistic_json(run_ratio(a, o.k, seed_list(o.seed_base, o.seeds)), true));
  }
  return json{{"command", "ratio"}, {"k", o.k}, {"reports", reports}};
}

struct HistOptions {
  double alpha = 1.0;
  std::size_t count = 100000;
  std::size_t seeds = 10;
  std::uint64_t seed_base = 1;
  std::size_t bins = 50;
  std::size_t sub = 8;
};

json run_dl_hist_cmd(const HistOptions& o) {
  validate_alphas({o.alpha});
  const auto run = run_dl_hist(o.alpha, o.count, seed_list(o.seed_base, o.seeds), o.bins);
  return json{{"command", "dl-hist"},
              {"report", run.report.to_json()},
              {"printed_alternate",
               {{"raw_integral", run.printed_raw_integral}, {"report", run.printed.to_json()}}},
              {"histogram", histogram_json_1d(run.histogram)}};
}

json run_pair_hist_cmd(const HistOptions& o) {
  validate_alphas({o.alpha});
  if (o.alpha < 0.5) throw Error(ErrorKind::DomainViolation, "pair-hist requires alpha >= 1/2");
  const auto run =
      run_pair_hist(o.alpha, o.count, seed_list(o.seed_base, o.seeds), o.bins, o.sub);
  return json{{"command", "pair-hist"},
              {"reports", {run.alpha_in_radical.to_json(), run.plain_radical.to_json()}},
              {"oracle",
               {{"bins", o.bins},
                {"sub", o.sub},
                {"l1_alpha_in_radical", run.oracle.l1_alpha_in_radical},
                {"l1_plain_radical", run.oracle.l1_plain_radical},
                {"accepted", to_string(run.oracle.accepted)}}},
              {"histogram", histogram_json_2d(run.histogram)}};
}

struct GeomOptions {
  std::vector<double> alphas;
  std::size_t count = 10000;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultDiscCap;
  unsigned bits = 256;
};

json run_geom_cmd(const GeomOptions& o) {
  validate_alphas(o.alphas);
  if (o.bits < 64) throw Error(ErrorKind::InvalidArgument, "--bits must be >= 64");
  json runs = json::array();
  for (double a : o.alphas) {
    const auto r = run_geom_check(a, o.count, o.seed, o.cap, o.bits);
    runs.push_back(json{{"alpha", r.alpha},
                        {"seed", r.seed},
                        {"bits", r.bits},
                        {"cap", r.cap},
                        {"samples", r.samples},
                        {"agree", r.agree},
                        {"disagree", r.disagree},
                        {"uncertified", r.uncertified},
                        {"no_disc", r.no_disc}});
  }
  return json{{"command", "geom-check"}, {"runs", runs}};
}

struct HurwitzOptions {
  double alpha = 0.44;
  std::size_t n = 1000;
  unsigned bits = 4096;
};

json run_hurwitz_cmd(const HurwitzOptions& o) {
  validate_alphas({o.alpha});
  if (o.bits < 64) throw Error(ErrorKind::InvalidArgument, "--bits must be >= 64");
  const auto r = run_hurwitz(o.alpha, o.n, o.bits);
  json tail{{"start", r.tail_start}, {"cap", r.tail_cap}};
  if (r.tail_tau) {
    tail["outcome"] = "returned";
    tail["tau"] = *r.tail_tau;
  } else {
    tail["outcome"] = "no_return_within_cap";
    tail["tau"] = nullptr;
  }
  return json{{"command", "hurwitz"}, {"alpha", r.alpha}, {"n", r.n},   {"bits", r.bits},
              {"returns", r.returns}, {"tail", tail}};
}

json error_json(const Error& e) {
  json err{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (e.step()) {
    err["step"] = *e.step();
  } else {
    err["step"] = nullptr;
  }
  return json{{"error", err}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on canonical rational approximation"};
  app.require_subcommand(1);

  PairsOptions pairs;
  auto* pairs_cmd = app.add_subcommand("pairs", "Consecutive theta_bar pairs as CSV (and SVG)");
  pairs_cmd->add_option("--preset", pairs.preset, "Named input constant (fig1)");
  pairs_cmd->add_option("--x", pairs.x_decimal, "Input as a decimal literal");
  pairs_cmd->add_option("--x-file", pairs.x_file, "Input decimal literal from a file");
  pairs_cmd->add_option("--alpha", pairs.alphas, "Threshold (repeatable)");
  pairs_cmd->add_option("--count", pairs.count, "Pairs per alpha");
  pairs_cmd->add_option("--out", pairs.out, "CSV path; _a<alpha> is appended for several alphas")
      ->required();
  pairs_cmd->add_flag("--svg", pairs.svg, "Also write a 600x600 scatter next to each CSV");

  SeedOptions levy;
  auto* levy_cmd = app.add_subcommand("levy", "log(q_bar_k)/k against the Levy-type limit");
  levy_cmd->add_option("--alpha", levy.alphas)->required();
  levy_cmd->add_option("--k", levy.k);
  levy_cmd->add_option("--seeds", levy.seeds, "Number of seeds");
  levy_cmd->add_option("--seed-base", levy.seed_base, "First seed");

  SeedOptions ratio;
  auto* ratio_cmd = app.add_subcommand("ratio", "k/n_k against mu(Omega_alpha)");
  ratio_cmd->add_option("--alpha", ratio.alphas)->required();
  ratio_cmd->add_option("--k", ratio.k);
  ratio_cmd->add_option("--seeds", ratio.seeds, "Number of seeds");
  ratio_cmd->add_option("--seed-base", ratio.seed_base, "First seed");

  HistOptions dl;
  auto* dl_cmd = app.add_subcommand("dl-hist", "theta_bar histogram against the D-L law");
  dl_cmd->add_option("--alpha", dl.alpha);
  dl_cmd->add_option("--count", dl.count, "Total samples");
  dl_cmd->add_option("--seeds", dl.seeds, "Number of seeds");
  dl_cmd->add_option("--seed-base", dl.seed_base, "First seed");
  dl_cmd->add_option("--bins", dl.bins);

  HistOptions ph;
  auto* ph_cmd = app.add_subcommand("pair-hist", "2-D pair histogram against both density readings");
  ph_cmd->add_option("--alpha", ph.alpha);
  ph_cmd->add_option("--count", ph.count, "Total pairs");
  ph_cmd->add_option("--seeds", ph.seeds, "Number of seeds");
  ph_cmd->add_option("--seed-base", ph.seed_base, "First seed");
  ph_cmd->add_option("--bins", ph.bins, "Bins per axis");
  ph_cmd->add_option("--oracle-sub", ph.sub, "Midpoint nodes per axis in each oracle cell");

  GeomOptions geom;
  auto* geom_cmd = app.add_subcommand("geom-check", "Geometric return time against tau");
  geom_cmd->add_option("--alpha", geom.alphas)->required();
  geom_cmd->add_option("--count", geom.count);
  geom_cmd->add_option("--seed", geom.seed);
  geom_cmd->add_option("--cap", geom.cap, "Horodisc scan cap");
  geom_cmd->add_option("--bits", geom.bits);

  HurwitzOptions hurwitz;
  auto* hurwitz_cmd = app.add_subcommand("hurwitz", "Golden-ratio return scan");
  hurwitz_cmd->add_option("--alpha", hurwitz.alpha);
  hurwitz_cmd->add_option("--n", hurwitz.n);
  hurwitz_cmd->add_option("--bits", hurwitz.bits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*pairs_cmd) emit(run_pairs(pairs));
    else if (*levy_cmd) emit(run_levy_cmd(levy));
    else if (*ratio_cmd) emit(run_ratio_cmd(ratio));
    else if (*dl_cmd) emit(run_dl_hist_cmd(dl));
    else if (*ph_cmd) emit(run_pair_hist_cmd(ph));
    else if (*geom_cmd) emit(run_geom_cmd(geom));
    else if (*hurwitz_cmd) emit(run_hurwitz_cmd(hurwitz));
  } catch (const Error& e) {
    emit(error_json(e));
    return kExitFailure;
  }
  return 0;
}
