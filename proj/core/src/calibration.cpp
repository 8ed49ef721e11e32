#include "hyperunif/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "hyperunif/error.hpp"
#include "hyperunif/imhof.hpp"
#include "hyperunif/mixture.hpp"
#include "hyperunif/results_io.hpp"
#include "hyperunif/statistic.hpp"
#include "hyperunif/uniformity_tests.hpp"

namespace hyperunif {
namespace {

void check_alphas(std::span<const double> alphas) {
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  }
}

double order_stat(std::span<const double> sorted, double index) {
  const double i = std::clamp(index, 0.0, static_cast<double>(sorted.size() - 1));
  return sorted[static_cast<std::size_t>(std::lround(i))];
}


}  // namespace

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile_type7: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile_type7: p must lie in [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::vector<NullTableRow> critical_values_from_null(int q, std::size_t n,
                                                    std::span<const double> alphas,
                                                    std::vector<double>& statistics,
                                                    std::uint64_t seed) {
  check_alphas(alphas);
  if (statistics.empty()) throw DomainError("critical_values_from_null: no statistics");
  std::sort(statistics.begin(), statistics.end());
  const double M = static_cast<double>(statistics.size());
  std::vector<NullTableRow> rows;
  for (double a : alphas) {
    NullTableRow r;
    r.q = q;
    r.n = n;
    r.alpha = a;
    r.critical_value = quantile_type7(statistics, 1.0 - a);
    const double centre = (M - 1.0) * (1.0 - a);
    const double spread = std::sqrt(M * a * (1.0 - a));
    r.std_error = 0.5 * (order_stat(statistics, centre + spread) - order_stat(statistics, centre - spread));
    r.M = statistics.size();
    r.seed = seed;
    rows.push_back(r);
  }
  return rows;
}

std::vector<NullTableRow> calibrate_critical_values(int q, std::size_t n,
                                                    std::span<const double> alphas, std::size_t M,
                                                    const RngStream& rng) {
  check_alphas(alphas);
  if (M < 1000) throw DomainError("calibrate_critical_values: M must be >= 1000");
  if (n < 2) throw DomainError("calibrate_critical_values: n must be >= 2");
  const KernelEvaluator kernel = make_cvm_kernel(q);
  std::vector<double> stats =
      simulate_null(q, n, M, rng.child(purpose::kCalibration, 0),
                    [&](const DirectionalSample& s) { return cvm_statistic(s, kernel); });
  return critical_values_from_null(q, n, alphas, stats, rng.seed);
}

std::vector<NullTableRow> asymptotic_critical_values(int q, int K, std::span<const double> alphas) {
  check_alphas(alphas);
  const ChiSqMixture m = build_mixture(q, K);
  const std::vector<double> cv = critical_values(m, alphas);
  std::vector<NullTableRow> rows;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    NullTableRow r;
    r.q = q;
    r.alpha = alphas[i];
    r.critical_value = cv[i];
    r.K = K;
    rows.push_back(r);
  }
  return rows;
}

std::string null_table_csv(std::span<const NullTableRow> rows) {
  std::string out = "q,n,alpha,critical_value,M,seed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.q) + ',';
    out += r.n ? std::to_string(*r.n) : std::string("inf");
    out += ',' + format_real(r.alpha) + ',' + format_real(r.critical_value) + ',';
    if (r.M) out += std::to_string(*r.M);
    out += ',';
    if (r.seed) out += std::to_string(*r.seed);
    out += '\n';
  }
  return out;
}

}  // namespace hyperunif
