#include "hyperunif/imhof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperunif/error.hpp"
#include "hyperunif/quadrature.hpp"
#include "hyperunif/summation.hpp"

namespace hyperunif {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesOrder = 8;           // pairs of odd/even power sums
constexpr double kSeriesArgument = 0.05;  // w * u below this uses power sums
constexpr double kMaxDirectCycles = 20000.0;

void validate(const ChiSqMixture& m) {
  if (m.weights.empty() || m.weights.size() != m.dofs.size()) {
    throw DomainError("imhof_tail: mixture must be non-empty with matching weights and dofs");
  }
  for (std::size_t k = 0; k < m.weights.size(); ++k) {
    if (!(m.weights[k] > 0.0) || !(m.dofs[k] > 0.0)) {
      throw DomainError("imhof_tail: weights and dofs must be positive");
    }
  }
}

// Smallest U such that Imhof's bound on int_U^inf du / (u rho(u)), applied to
// the leading m terms, is below eps (for the best m).
double truncation_point(const ChiSqMixture& m, double eps) {
  const std::size_t terms = std::min<std::size_t>(m.K(), 5000);
  double best = std::numeric_limits<double>::infinity();
  long double half_dof = 0.0L;
  long double log_weights = 0.0L;
  for (std::size_t j = 0; j < terms; ++j) {
    half_dof += 0.5L * m.dofs[j];
    log_weights += 0.5L * m.dofs[j] * std::log(static_cast<long double>(m.weights[j]));
    const long double log_u =
        (-std::log(kPi) - std::log(half_dof) - log_weights - std::log(static_cast<long double>(eps))) /
        half_dof;
    best = std::min(best, static_cast<double>(std::exp(log_u)));
  }
  return best;
}

// theta_0(u) = (1/2) sum d atan(w u) and log rho(u), with small-w terms folded
// into power series.
class CharacteristicTerms {
 public:
  CharacteristicTerms(const ChiSqMixture& m, double u_max) : m_(m) {
    // Weights are not assumed monotone: split after the last term that is
    // still large at u_max.
    split_ = 0;
    for (std::size_t k = 0; k < m.K(); ++k) {
      if (m.weights[k] * u_max >= kSeriesArgument) split_ = k + 1;
    }
    sums_.fill(0.0L);
    for (std::size_t k = split_; k < m.K(); ++k) {
      long double p = m.weights[k];
      for (int j = 1; j <= 2 * kSeriesOrder; ++j) {
        sums_[j - 1] += m.dofs[k] * p;
        p *= m.weights[k];
      }
    }
  }

  void eval(double u, double& phase, double& log_rho) const {
    double ph = 0.0;
    double lr = 0.0;
    for (std::size_t k = 0; k < split_; ++k) {
      const double z = m_.weights[k] * u;
      ph += m_.dofs[k] * std::atan(z);
      lr += m_.dofs[k] * std::log1p(z * z);
    }
    if (split_ < m_.K()) {
      // atan z = sum (-1)^i z^{2i+1}/(2i+1); log1p(z^2) = sum (-1)^{i+1} z^{2i}/i.
      const long double u2 = static_cast<long double>(u) * u;
      long double odd = u;
      long double even = u2;
      long double ph_tail = 0.0L;
      long double lr_tail = 0.0L;
      for (int i = 0; i < kSeriesOrder; ++i) {
        const long double sgn = (i % 2 == 0) ? 1.0L : -1.0L;
        ph_tail += sgn * odd * sums_[2 * i] / (2 * i + 1);
        lr_tail += sgn * even * sums_[2 * i + 1] / (i + 1);
        odd *= u2;
        even *= u2;
      }
      ph += static_cast<double>(ph_tail);
      lr += static_cast<double>(lr_tail);
    }
    phase = 0.5 * ph;
    log_rho = 0.25 * lr;
  }

  // d/du theta_0 at u = 0, i.e. (1/2) sum w d.
  double slope_at_zero() const { return 0.5 * m_.mean(); }

 private:
  const ChiSqMixture& m_;
  std::size_t split_ = 0;
  std::array<long double, 2 * kSeriesOrder> sums_{};
};

double integrand(const CharacteristicTerms& terms, double u, double x) {
  if (u == 0.0) return terms.slope_at_zero() - 0.5 * x;
  double phase = 0.0, log_rho = 0.0;
  terms.eval(u, phase, log_rho);
  return std::sin(phase - 0.5 * x * u) * std::exp(-log_rho) / u;
}

// Limit of Wynn's epsilon table for the given partial sums.
double wynn_epsilon(const std::vector<double>& partial) {
  const std::size_t n = partial.size();
  std::vector<double> prev(n + 1, 0.0);  // epsilon_{-1}
  std::vector<double> cur(partial.begin(), partial.end());
  double estimate = partial.back();
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> next(n - col);
    bool broken = false;
    for (std::size_t i = 0; i + col < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0 || !std::isfinite(diff)) {
        broken = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (broken) break;
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) estimate = cur.back();
  }
  return estimate;
}

// Integral over [0, inf) for one x when the Imhof cut-off is far out: direct
// quadrature to u0, then half-period panels accelerated by Wynn's algorithm.
double accelerated_integral(const ChiSqMixture& m, double x, double tol, const ImhofOptions& opt) {
  const CharacteristicTerms terms(m, std::numeric_limits<double>::infinity());
  const double h = 2.0 * kPi / x;
  const double u0 = h * std::ceil(std::max(50.0, 20.0 / (m.weights.front() * h)));
  AdaptiveOptions ao;
  ao.abs_tol = 0.1 * tol;
  ao.max_intervals = opt.max_intervals;
  ao.initial_pieces = static_cast<std::size_t>(std::ceil(u0 / h)) + 1;
  auto f = [&](double u) { return integrand(terms, u, x); };
  const double head = integrate_adaptive(f, 0.0, u0, ao).value;

  AdaptiveOptions panel;
  panel.abs_tol = 1e-3 * tol;
  panel.max_intervals = 2000;
  std::vector<double> partial;
  double sum = 0.0;
  double last = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;
  for (int i = 0; i < 400; ++i) {
    const double a = u0 + h * i;
    sum += integrate_adaptive(f, a, a + h, panel).value;
    partial.push_back(sum);
    if (partial.size() < 5) continue;
    const double est = wynn_epsilon(partial);
    if (std::abs(est - last) < 0.1 * tol) {
      if (++stable == 3) return head + est;
    } else {
      stable = 0;
    }
    last = est;
  }
  throw NumericalFailure("imhof_tail: oscillatory tail did not converge",
                         "x=" + std::to_string(x) + " K=" + std::to_string(m.K()));
}

}  // namespace

std::vector<double> imhof_tail(const ChiSqMixture& m, std::span<const double> xs,
                               const ImhofOptions& opt) {
  validate(m);
  std::vector<double> out(xs.size(), 1.0);
  std::vector<double> active;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 0.0) {
      active.push_back(xs[i]);
      where.push_back(i);
    }
  }
  if (active.empty()) return out;

  // Error budget on the tail: 1/5 truncation, 4/5 quadrature (integral scale pi).
  const double u_cut = truncation_point(m, 0.2 * opt.abs_tol);
  const double x_max = *std::max_element(active.begin(), active.end());
  const double cycles = u_cut * x_max / (4.0 * kPi);
  const double quad_tol = 0.8 * opt.abs_tol * kPi;

  std::vector<double> integrals(active.size());
  if (cycles <= kMaxDirectCycles) {
    const CharacteristicTerms terms(m, u_cut);
    const std::size_t fam = active.size();
    auto fill = [&](double lo, double hi, std::span<double> values) {
      const auto u = detail::kronrod_abscissae(lo, hi);
      for (std::size_t node = 0; node < detail::kKronrodPoints; ++node) {
        double phase = 0.0, log_rho = 0.0;
        terms.eval(u[node], phase, log_rho);
        const double amp = std::exp(-log_rho) / u[node];
        for (std::size_t j = 0; j < fam; ++j) {
          values[node * fam + j] = std::sin(phase - 0.5 * active[j] * u[node]) * amp;
        }
      }
    };
    AdaptiveOptions ao;
    ao.abs_tol = quad_tol;
    ao.max_intervals = opt.max_intervals;
    ao.initial_pieces = static_cast<std::size_t>(std::ceil(2.0 * cycles)) + 16;
    const auto res = integrate_adaptive_family(fill, 0.0, u_cut, fam, ao);
    for (std::size_t j = 0; j < fam; ++j) integrals[j] = res[j].value;
  } else {
    for (std::size_t j = 0; j < active.size(); ++j) {
      integrals[j] = accelerated_integral(m, active[j], quad_tol, opt);
    }
  }
  for (std::size_t j = 0; j < active.size(); ++j) {
    out[where[j]] = std::clamp(0.5 + integrals[j] / kPi, 0.0, 1.0);
  }
  return out;
}

double imhof_tail(const ChiSqMixture& m, double x, const ImhofOptions& opt) {
  const double xs[1] = {x};
  return imhof_tail(m, std::span<const double>(xs), opt).front();
}

std::vector<double> critical_values(const ChiSqMixture& m, std::span<const double> alphas,
                                    double prob_tol, const ImhofOptions& opt) {
  validate(m);
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("critical_value: alpha must lie in (0, 1)");
  }
  const std::size_t r = alphas.size();
  if (r == 0) return {};

  double hi = m.mean() + 20.0 * std::sqrt(m.variance());
  std::vector<double> hi_xs(1, hi);
  double tail_hi = imhof_tail(m, hi_xs, opt).front();
  const double min_alpha = *std::min_element(alphas.begin(), alphas.end());
  for (int widen = 0; tail_hi >= min_alpha; ++widen) {
    if (widen == 20) {
      throw NumericalFailure("critical_value: could not bracket the root",
                             "upper=" + std::to_string(hi) + " tail=" + std::to_string(tail_hi));
    }
    hi *= 2.0;
    hi_xs[0] = hi;
    tail_hi = imhof_tail(m, hi_xs, opt).front();
  }

  // Illinois iteration on g(x) = tail(x) - alpha, g(lo) > 0 > g(hi).
  std::vector<double> lo(r, 0.0), up(r, hi), g_lo(r), g_up(r), root(r);
  std::vector<int> side(r, 0);
  std::vector<bool> done(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    g_lo[i] = 1.0 - alphas[i];
    g_up[i] = tail_hi - alphas[i];
  }
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> trial;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r; ++i) {
      if (done[i]) continue;
      double x = (lo[i] * g_up[i] - up[i] * g_lo[i]) / (g_up[i] - g_lo[i]);
      if (!(x > lo[i] && x < up[i])) x = 0.5 * (lo[i] + up[i]);
      trial.push_back(x);
      idx.push_back(i);
    }
    if (trial.empty()) return root;
    const auto tails = imhof_tail(m, trial, opt);
    for (std::size_t t = 0; t < trial.size(); ++t) {
      const std::size_t i = idx[t];
      const double g = tails[t] - alphas[i];
      if (std::abs(g) <= prob_tol) {
        root[i] = trial[t];
        done[i] = true;
        continue;
      }
      if (g > 0.0) {
        lo[i] = trial[t];
        g_lo[i] = g;
        if (side[i] == 1) g_up[i] *= 0.5;
        side[i] = 1;
      } else {
        up[i] = trial[t];
        g_up[i] = g;
        if (side[i] == -1) g_lo[i] *= 0.5;
        side[i] = -1;
      }
      if (up[i] - lo[i] <= 1e-15 * up[i]) {
        root[i] = 0.5 * (lo[i] + up[i]);
        done[i] = true;
      }
    }
  }
  throw NumericalFailure("critical_value: root refinement did not converge");
}

double critical_value(const ChiSqMixture& m, double alpha, double prob_tol, const ImhofOptions& opt) {
  const double a[1] = {alpha};
  return critical_values(m, std::span<const double>(a), prob_tol, opt).front();
}

std::vector<double> default_truncation_grid(const ChiSqMixture& m, std::size_t points) {
  std::vector<double> probs(points);
  for (std::size_t i = 0; i < points; ++i) probs[i] = (static_cast<double>(i) + 0.5) / points;
  return critical_values(m, probs);
}

std::vector<TruncationPoint> truncation_error_profile(const ChiSqMixture& small,
                                                      const ChiSqMixture& ref,
                                                      std::span<const double> x_grid) {
  std::vector<double> grid;
  if (x_grid.empty()) {
    grid = default_truncation_grid(small);
  } else {
    grid.assign(x_grid.begin(), x_grid.end());
  }
  const auto p_small = imhof_tail(small, grid);
  const auto p_ref = imhof_tail(ref, grid);
  std::vector<TruncationPoint> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = {grid[i], p_small[i], std::abs(p_small[i] - p_ref[i])};
  }
  return out;
}

std::vector<TruncationPoint> truncation_error_profile(int q, int K_small, int K_ref,
                                                      std::span<const double> x_grid) {
  if (K_small > K_ref) throw DomainError("truncation_error_profile: K_small must not exceed K_ref");
  const ChiSqMixture small = build_mixture(q, K_small);
  if (K_small == K_ref) return truncation_error_profile(small, small, x_grid);
  return truncation_error_profile(small, build_mixture(q, K_ref), x_grid);
}

}  // namespace hyperunif
