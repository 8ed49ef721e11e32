// hyperunif: command-line front end for the projected CvM uniformity tests.
//
// Exit codes: 0 success, 1 usage, 2 data (parse / I/O), 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperunif/calibration.hpp"
#include "hyperunif/catalogue.hpp"
#include "hyperunif/coefficients.hpp"
#include "hyperunif/error.hpp"
#include "hyperunif/imhof.hpp"
#include "hyperunif/mixture.hpp"
#include "hyperunif/parallel.hpp"
#include "hyperunif/results_io.hpp"
#include "hyperunif/uniformity_tests.hpp"

namespace {

using namespace hyperunif;
using ordered_json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for data-side I/O problems (unwritable output and the like).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 12345;
  std::string threads = "auto";
  std::string output;
  std::string format = "csv";
};

OutputFormat output_format(const Globals& g) {
  try {
    return parse_output_format(g.format);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void emit(const Globals& g, const std::string& content) {
  if (g.output.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  try {
    write_file_atomic(g.output, content);
  } catch (const std::runtime_error& e) {
    throw DataError(e.what());
  }
}

void apply_threads(const std::string& text) {
  if (text == "auto") {
    set_thread_count(0);
    return;
  }
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size() || v < 1) throw std::invalid_argument(text);
    set_thread_count(static_cast<unsigned>(v));
  } catch (const std::logic_error&) {
    throw UsageError("--threads expects a positive integer or 'auto'");
  }
}

std::filesystem::path cache_dir() {
  const char* env = std::getenv("HYPERUNIF_CACHE_DIR");
  return env ? std::filesystem::path(env) : std::filesystem::path();
}

void check_alpha(const std::vector<double>& alphas) {
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw UsageError("--alpha values must lie strictly between 0 and 1");
  }
}

// test --------------------------------------------------------------------------

struct TestArgs {
  std::string file;
  std::string format = "lonlat_deg";
  std::string test = "all";
  std::string pvalue = "asymptotic";
  std::string ccf_ks_pvalue = "asymptotic";
  std::size_t mc_reps = 9999;
  std::size_t k_dirs = 50;
  int K = 10000;
  bool skip_bad = false;
  ColumnMapping columns;
};

int run_test(const Globals& g, const TestArgs& a) {
  const OutputFormat out_format = output_format(g);
  ParseOptions popt;
  std::vector<TestName> tests;
  PValueMethod method{};
  CcfOptions ccf_opt;
  try {
    popt.format = parse_coordinate_format(a.format);
    method = parse_pvalue_method(a.pvalue);
    ccf_opt.ks_method = parse_pvalue_method(a.ccf_ks_pvalue);
    if (a.test == "all") {
      tests = {TestName::rayleigh, TestName::gine_fn, TestName::ccf, TestName::cvm};
    } else {
      tests = {parse_test_name(a.test)};
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  popt.columns = a.columns;
  popt.skip_bad = a.skip_bad;

  const ParsedData data = parse_catalogue(std::filesystem::path(a.file), popt);
  for (const auto& issue : data.skipped) {
    std::cerr << "skipped line " << issue.line << ": " << issue.message << "\n";
  }
  if (data.catalogue) {
    std::cerr << "longitude convention: " << to_string(data.catalogue->source_convention) << "\n";
  }
  const DirectionalSample& s = data.sample;
  std::cerr << "read n=" << s.n() << " points on the " << s.q() << "-sphere\n";

  std::vector<TestOutcome> outcomes;
  for (TestName t : tests) {
    const RngStream rng{g.seed, static_cast<std::uint64_t>(t) + 1};
    switch (t) {
      case TestName::cvm: {
        CvmTestOptions opt;
        opt.K = a.K;
        opt.cache_dir = cache_dir();
        outcomes.push_back(cvm_test(s, method, rng, a.mc_reps, opt));
        break;
      }
      case TestName::ks:
        outcomes.push_back(ks_test(s, method, rng, a.mc_reps));
        break;
      case TestName::ccf:
        outcomes.push_back(ccf_test(s, a.k_dirs, rng, a.mc_reps, ccf_opt));
        break;
      case TestName::rayleigh:
        outcomes.push_back(rayleigh_test(s, method, rng, a.mc_reps));
        break;
      case TestName::gine_fn:
        if (s.q() == 1) {
          if (a.test == "all") {
            std::cerr << "gine-fn skipped: not available on the circle\n";
            continue;
          }
          throw UsageError("gine-fn is not available on the circle (q = 1)");
        }
        if (method == PValueMethod::asymptotic) {
          std::cerr << "gine-fn: Monte Carlo p-value (no asymptotic branch)\n";
        }
        outcomes.push_back(gine_fn_test(s, rng, a.mc_reps));
        break;
    }
  }
  emit(g, out_format == OutputFormat::json ? results_to_json(outcomes) : results_to_csv(outcomes));
  return kOk;
}

// critical-value ----------------------------------------------------------------

struct CriticalArgs {
  int q = 0;
  std::optional<std::size_t> n;
  std::size_t reps = 100000;
  bool asymptotic = false;
  int K = 10000;
  std::vector<double> alpha{0.10, 0.05, 0.01};
};

int run_critical(const Globals& g, const CriticalArgs& a) {
  const OutputFormat fmt = output_format(g);
  check_alpha(a.alpha);
  if (a.asymptotic == a.n.has_value()) throw UsageError("give exactly one of --n and --asymptotic");
  if (a.q < 1) throw UsageError("--q must be >= 1");
  std::vector<NullTableRow> rows;
  if (a.asymptotic) {
    if (a.K < 1) throw UsageError("--K must be >= 1");
    const ChiSqMixture m = cached_mixture(a.q, a.K, cache_dir());
    const std::vector<double> cv = critical_values(m, a.alpha);
    for (std::size_t i = 0; i < cv.size(); ++i) {
      NullTableRow r;
      r.q = a.q;
      r.alpha = a.alpha[i];
      r.critical_value = cv[i];
      r.K = a.K;
      rows.push_back(r);
    }
  } else {
    if (*a.n < 2) throw UsageError("--n must be >= 2");
    if (a.reps < 1000) throw UsageError("--reps must be >= 1000");
    rows = calibrate_critical_values(a.q, *a.n, a.alpha, a.reps, RngStream{g.seed, 0});
  }
  if (fmt == OutputFormat::csv) {
    emit(g, null_table_csv(rows));
    return kOk;
  }
  ordered_json doc = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["q"] = r.q;
    j["n"] = r.n ? ordered_json(*r.n) : ordered_json("inf");
    j["alpha"] = r.alpha;
    j["critical_value"] = r.critical_value;
    j["std_error"] = r.std_error;
    j["M"] = r.M ? ordered_json(*r.M) : ordered_json(nullptr);
    j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
    j["K"] = r.K ? ordered_json(*r.K) : ordered_json(nullptr);
    doc.push_back(std::move(j));
  }
  emit(g, doc.dump(2) + "\n");
  return kOk;
}

// tail / truncation-error / coefficients / sample -------------------------------

int run_tail(const Globals& g, int q, const std::vector<double>& xs, int K) {
  const OutputFormat fmt = output_format(g);
  if (q < 1 || K < 1) throw UsageError("--q and --K must be >= 1");
  const ChiSqMixture m = cached_mixture(q, K, cache_dir());
  const std::vector<double> p = imhof_tail(m, xs);
  if (fmt == OutputFormat::json) {
    ordered_json doc = ordered_json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) doc.push_back({{"x", xs[i]}, {"probability", p[i]}});
    emit(g, doc.dump(2) + "\n");
  } else {
    std::string out = "x,probability\n";
    for (std::size_t i = 0; i < xs.size(); ++i) out += format_real(xs[i]) + ',' + format_real(p[i]) + '\n';
    emit(g, out);
  }
  return kOk;
}

int run_truncation(const Globals& g, int q, int k_small, int k_ref, std::size_t points) {
  const OutputFormat fmt = output_format(g);
  if (q < 1 || k_small < 1 || k_ref < 1) throw UsageError("--q, --K-small and --K-ref must be >= 1");
  if (k_small > k_ref) throw UsageError("--K-small must not exceed --K-ref");
  if (points < 1) throw UsageError("--points must be >= 1");
  const ChiSqMixture small = cached_mixture(q, k_small, cache_dir());
  const ChiSqMixture ref = cached_mixture(q, k_ref, cache_dir());
  const std::vector<double> grid = default_truncation_grid(small, points);
  const auto profile = truncation_error_profile(small, ref, grid);
  double worst = 0.0;
  for (const auto& t : profile) worst = std::max(worst, t.abs_error);
  std::cerr << "max abs error " << format_real(worst) << "\n";
  if (fmt == OutputFormat::json) {
    ordered_json doc = ordered_json::array();
    for (const auto& t : profile) {
      doc.push_back({{"x", t.x}, {"probability", t.probability}, {"abs_error", t.abs_error}});
    }
    emit(g, doc.dump(2) + "\n");
  } else {
    std::string out = "x,probability,abs_error\n";
    for (const auto& t : profile) {
      out += format_real(t.x) + ',' + format_real(t.probability) + ',' + format_real(t.abs_error) + '\n';
    }
    emit(g, out);
  }
  return kOk;
}

int run_coefficients(const Globals& g, int q, int k_max) {
  const OutputFormat fmt = output_format(g);
  if (q < 1 || k_max < 1) throw UsageError("--q and --k-max must be >= 1");
  const std::vector<double> b = coefficient_sequence(q, k_max);
  auto dof_text = [&](int k) {
    try {
      return std::to_string(dof(k, q));
    } catch (const NumericalFailure&) {
      return format_real(dof_real(k, q));
    }
  };
  if (fmt == OutputFormat::json) {
    ordered_json doc = ordered_json::array();
    for (int k = 1; k <= k_max; ++k) {
      doc.push_back({{"k", k}, {"b", b[k - 1]}, {"d", dof_real(k, q)},
                     {"w", mixture_weight(k, q, b[k - 1])}});
    }
    emit(g, doc.dump(2) + "\n");
  } else {
    std::string out = "k,b,d,w\n";
    for (int k = 1; k <= k_max; ++k) {
      out += std::to_string(k) + ',' + format_real(b[k - 1]) + ',' + dof_text(k) + ',' +
             format_real(mixture_weight(k, q, b[k - 1])) + '\n';
    }
    emit(g, out);
  }
  return kOk;
}

int run_sample(const Globals& g, int q, std::size_t n, double kappa) {
  const OutputFormat fmt = output_format(g);
  if (q < 1 || n < 1) throw UsageError("--q and --n must be >= 1");
  if (!(kappa >= 0.0)) throw UsageError("--kappa must be >= 0");
  const RngStream rng = RngStream{g.seed, 0}.child(purpose::kSample, 0);
  std::vector<double> mu(static_cast<std::size_t>(q) + 1, 0.0);
  mu.back() = 1.0;
  const DirectionalSample s =
      kappa > 0.0 ? sample_vmf(q, n, kappa, UnitVector(mu), rng) : sample_uniform(q, n, rng);
  if (fmt == OutputFormat::json) {
    ordered_json doc;
    doc["q"] = q;
    doc["n"] = n;
    doc["seed"] = g.seed;
    doc["points"] = ordered_json::array();
    for (std::size_t i = 0; i < s.n(); ++i) {
      const auto p = s.point(i);
      doc["points"].push_back(std::vector<double>(p.begin(), p.end()));
    }
    emit(g, doc.dump(2) + "\n");
    return kOk;
  }
  std::string out;
  for (std::size_t c = 0; c < s.dim(); ++c) out += (c ? ",x" : "x") + std::to_string(c + 1);
  out += '\n';
  for (std::size_t i = 0; i < s.n(); ++i) {
    const auto p = s.point(i);
    for (std::size_t c = 0; c < p.size(); ++c) out += (c ? "," : "") + format_real(p[c]);
    out += '\n';
  }
  emit(g, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected Cramer-von Mises tests of uniformity on the hypersphere"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base seed of every random stream")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads: a positive integer or 'auto'")
      ->capture_default_str();
  app.add_option("--output", g.output, "Write the primary output here instead of stdout");
  app.add_option("--format", g.format, "Output format: json or csv")->capture_default_str();

  TestArgs ta;
  auto* test = app.add_subcommand("test", "Run uniformity tests on a data file");
  test->add_option("--file", ta.file, "Input CSV")->required();
  test->add_option("--format", ta.format, "Input format: lonlat_deg, latlon_deg or cartesian")
      ->capture_default_str();
  test->add_option("--test", ta.test, "cvm, ks, ccf, rayleigh, gine-fn or all")->capture_default_str();
  test->add_option("--pvalue", ta.pvalue, "asymptotic or mc")->capture_default_str();
  test->add_option("--mc-reps", ta.mc_reps, "Monte Carlo replicates")->capture_default_str();
  test->add_option("--k-dirs", ta.k_dirs, "Directions for the CCF test")->capture_default_str();
  test->add_option("--K", ta.K, "Mixture truncation for asymptotic CvM p-values")->capture_default_str();
  test->add_option("--ccf-ks-pvalue", ta.ccf_ks_pvalue, "Per-direction KS p-values in CCF: asymptotic or mc")
      ->capture_default_str();
  test->add_flag("--skip-bad", ta.skip_bad, "Drop invalid rows instead of failing");
  test->add_option("--lat-col", ta.columns.lat, "Latitude column name");
  test->add_option("--lon-col", ta.columns.lon, "Longitude column name");
  test->add_option("--name-col", ta.columns.name, "Name column");
  test->add_option("--diameter-col", ta.columns.diameter, "Diameter column (km)");

  CriticalArgs ca;
  auto* crit = app.add_subcommand("critical-value", "Critical values of CvM_{n,q}");
  crit->add_option("--q", ca.q, "Sphere dimension")->required();
  crit->add_option("--n", ca.n, "Sample size (Monte Carlo calibration)");
  crit->add_option("--reps", ca.reps, "Monte Carlo replicates")->capture_default_str();
  crit->add_flag("--asymptotic", ca.asymptotic, "Invert the asymptotic tail instead");
  crit->add_option("--K", ca.K, "Mixture truncation")->capture_default_str();
  crit->add_option("--alpha", ca.alpha, "Significance levels")->capture_default_str();

  int tq = 0;
  int tK = 10000;
  std::vector<double> txs;
  auto* tail = app.add_subcommand("tail", "Asymptotic tail probability P[CvM > x]");
  tail->add_option("--q", tq, "Sphere dimension")->required();
  tail->add_option("--x", txs, "Evaluation points")->required();
  tail->add_option("--K", tK, "Mixture truncation")->capture_default_str();

  int eq = 0;
  int k_small = 1000;
  int k_ref = 100000;
  std::size_t points = 200;
  auto* trunc = app.add_subcommand("truncation-error", "Tail error of a truncated mixture");
  trunc->add_option("--q", eq, "Sphere dimension")->required();
  trunc->add_option("--K-small", k_small, "Truncation under study")->capture_default_str();
  trunc->add_option("--K-ref", k_ref, "Reference truncation")->capture_default_str();
  trunc->add_option("--points", points, "Grid size")->capture_default_str();

  int cq = 0;
  int k_max = 10;
  auto* coef = app.add_subcommand("coefficients", "Coefficients b_{k,q}, d_{k,q}, w_{k,q}");
  coef->add_option("--q", cq, "Sphere dimension")->required();
  coef->add_option("--k-max", k_max, "Largest k")->capture_default_str();

  int sq = 0;
  std::size_t sn = 0;
  double kappa = 0.0;
  auto* samp = app.add_subcommand("sample", "Draw a uniform (or von Mises-Fisher) sample");
  samp->add_option("--q", sq, "Sphere dimension")->required();
  samp->add_option("--n", sn, "Sample size")->required();
  samp->add_option("--kappa", kappa, "vMF concentration about the last axis (0: uniform)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    apply_threads(g.threads);
    if (*test) return run_test(g, ta);
    if (*crit) return run_critical(g, ca);
    if (*tail) return run_tail(g, tq, txs, tK);
    if (*trunc) return run_truncation(g, eq, k_small, k_ref, points);
    if (*coef) return run_coefficients(g, cq, k_max);
    if (*samp) return run_sample(g, sq, sn, kappa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& issue : e.issues()) std::cerr << "  line " << issue.line << ": " << issue.message << "\n";
    return kData;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    if (!e.diagnostics().empty()) std::cerr << "  " << e.diagnostics() << "\n";
    return kNumerical;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
