#include "hyperunif/coefficients.hpp"

#include <algorithm>
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
__extension__ using uint128 = unsigned __int128;

void check_kq(int k, int q, const char* who) {
  if (k < 1 || q < 1) throw DomainError(std::string(who) + ": k and q must be >= 1");
}

// C(n, r) with overflow detection through 128-bit intermediates.
std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  uint128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // acc * (n - r + i) / i is exact at every step.
    acc = acc * (n - r + i);
    acc /= i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw NumericalFailure("dof: binomial coefficient exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

long double binomial_real(long double n, int r) {
  long double acc = 1.0L;
  for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

// log of (q-1)^2 Gamma((q-1)/2)^3 Gamma(3q/2) / (8 pi q^2 Gamma(q/2)^3 Gamma((3q+1)/2)).
double log_prefactor(int q) {
  const double qd = q;
  return 2.0 * std::log(qd - 1.0) + 3.0 * std::lgamma(0.5 * (qd - 1.0)) + std::lgamma(1.5 * qd) -
         std::log(8.0 * kPi) - 2.0 * std::log(qd) - 3.0 * std::lgamma(0.5 * qd) -
         std::lgamma(0.5 * (3.0 * qd + 1.0));
}

double low_dimension_coefficient(int k, int q) {
  const double kd = k;
  switch (q) {
    case 1:
      return 1.0 / (kPi * kPi * kd * kd);
    case 2:
      return 1.0 / (2.0 * (2.0 * kd + 3.0) * (2.0 * kd - 1.0));
    default:  // q == 3
      if (k == 1) return 35.0 / (72.0 * kPi * kPi);
      return (3.0 * kd * kd + 6.0 * kd + 4.0) /
             (kd * kd * (kd + 1.0) * (kd + 2.0) * (kd + 2.0)) / (2.0 * kPi * kPi);
  }
}

}  // namespace

std::uint64_t dof(int k, int q) {
  check_kq(k, q, "dof");
  const auto a = binomial_exact(static_cast<std::uint64_t>(q + k - 2), static_cast<std::uint64_t>(q - 1));
  const auto b = binomial_exact(static_cast<std::uint64_t>(q + k - 1), static_cast<std::uint64_t>(q - 1));
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw NumericalFailure("dof: value exceeds 64-bit range");
  }
  return a + b;
}

double dof_real(int k, int q) {
  check_kq(k, q, "dof_real");
  const long double n = static_cast<long double>(q) + k;
  return static_cast<double>(binomial_real(n - 2, q - 1) + binomial_real(n - 1, q - 1));
}

SeriesValue coefficient_series(int k, int q) {
  check_kq(k, q, "coefficient_series");
  const long double qd = q;
  const long double num[4] = {1.0L - k, qd + k, 0.5L * (qd + 1.0L), 1.5L * qd};
  const long double den[3] = {qd + 1.0L, 0.5L * qd + 1.0L, 0.5L * (3.0L * qd + 1.0L)};
  long double log_mag = 0.0L;  // log |t_m|
  int sign = 1;
  CompensatedSum<long double> sum;
  long double abs_sum = 0.0L;
  for (int m = 0; m < k; ++m) {
    const long double t = sign * std::exp(log_mag);
    sum += t;
    abs_sum += std::abs(t);
    if (m + 1 == k) break;
    for (const long double a : num) {
      const long double f = a + m;
      log_mag += std::log(std::abs(f));
      if (f < 0) sign = -sign;
    }
    for (const long double b : den) log_mag -= std::log(b + m);
    log_mag -= std::log(static_cast<long double>(m + 1));
  }
  const long double value = sum.value();
  const double condition = value == 0.0L ? std::numeric_limits<double>::infinity()
                                         : static_cast<double>(abs_sum / std::abs(value));
  return {static_cast<double>(value), condition};
}

double coef_closed_form(int k, int q) {
  check_kq(k, q, "coef_closed_form");
  if (q <= 3) return low_dimension_coefficient(k, q);
  const SeriesValue series = coefficient_series(k, q);
  if (series.condition > kSeriesConditionLimit) return coefficient_sequence(q, k).back();
  const double b = std::exp(log_prefactor(q)) * (2.0 * k + q - 1.0) * series.value;
  if (!(b > 0.0)) {
    throw NumericalFailure("coef_closed_form: non-positive coefficient from the 4F3 series",
                           "k=" + std::to_string(k) + " q=" + std::to_string(q) +
                               " condition=" + std::to_string(series.condition));
  }
  return b;
}

std::vector<double> coefficient_sequence(int q, int K) {
  if (q < 1 || K < 1) throw DomainError("coefficient_sequence: q and K must be >= 1");
  std::vector<double> b(static_cast<std::size_t>(K));
  if (q <= 3) {
    for (int k = 1; k <= K; ++k) b[k - 1] = low_dimension_coefficient(k, q);
    return b;
  }
  // F_n = 4F3(-n, n+s-1, a+ix, a-ix; a+b, a+c, a+d; 1) with n = k-1 is a
  // Wilson polynomial in n. Parameters matched to the coefficient series:
  // a = q + 1/4, b = 3/4, c = 3/4 - q/2, d = q/2 + 1/4, s = a+b+c+d = q+2,
  // and (a+ix)(a-ix) = (3q/2)((q+1)/2). Recurrence:
  //   A_n F_{n+1} = (A_n + C_n - lambda) F_n - C_n F_{n-1}.
  const long double qd = q;
  const long double pa = qd + 0.25L;
  const long double pb = 0.75L;
  const long double pc = 0.75L - 0.5L * qd;
  const long double pd = 0.5L * qd + 0.25L;
  const long double s = pa + pb + pc + pd;
  const long double lambda = (1.5L * qd) * (0.5L * (qd + 1.0L));
  auto A = [&](long double n) {
    return (n + s - 1) * (n + pa + pb) * (n + pa + pc) * (n + pa + pd) / ((2 * n + s - 1) * (2 * n + s));
  };
  auto C = [&](long double n) {
    return n * (n + pb + pc - 1) * (n + pb + pd - 1) * (n + pc + pd - 1) /
           ((2 * n + s - 2) * (2 * n + s - 1));
  };
  const double pref = std::exp(log_prefactor(q));
  long double prev = 1.0L;               // F_0
  long double cur = 1.0L - lambda / A(0);  // F_1 = 1/(3q+1)
  b[0] = pref * (q + 1.0) * static_cast<double>(prev);
  for (int k = 2; k <= K; ++k) {
    b[k - 1] = pref * (2.0 * k + q - 1.0) * static_cast<double>(cur);
    const long double n = k - 1;
    const long double next = ((A(n) + C(n) - lambda) * cur - C(n) * prev) / A(n);
    prev = cur;
    cur = next;
  }
  return b;
}

double chebyshev_t(int n, double x) {
  if (n < 0) throw DomainError("chebyshev_t: n must be >= 0");
  return std::cos(n * std::acos(std::clamp(x, -1.0, 1.0)));
}

double gegenbauer(int n, double lambda, double x) {
  if (n < 0) throw DomainError("gegenbauer: n must be >= 0");
  if (n == 0) return 1.0;
  double c0 = 1.0;
  double c1 = 2.0 * lambda * x;
  for (int m = 1; m < n; ++m) {
    const double c2 = (2.0 * (m + lambda) * x * c1 - (m + 2.0 * lambda - 1.0) * c0) / (m + 1.0);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

double gegenbauer_normalizer(int k, int q) {
  if (q < 2 || k < 0) throw DomainError("gegenbauer_normalizer: need q >= 2, k >= 0");
  const double qd = q;
  const double log_c = (3.0 - qd) * std::log(2.0) + std::log(kPi) + std::lgamma(qd + k - 1.0) -
                       std::log(qd + 2.0 * k - 1.0) - std::lgamma(k + 1.0) -
                       2.0 * std::lgamma(0.5 * (qd - 1.0));
  return std::exp(log_c);
}

std::vector<double> coef_quadrature_oracle_range(int k_max, int q, const KernelEvaluator& kernel) {
  if (k_max < 1 || k_max > 50) throw DomainError("coef_quadrature_oracle: k must lie in [1, 50]");
  if (kernel.q() != q) throw DomainError("coef_quadrature_oracle: kernel dimension differs from q");
  const double lambda = 0.5 * (q - 1);
  auto integrate = [&](std::size_t nodes) {
    const auto& rule = gauss_legendre(nodes);
    std::vector<CompensatedSum<>> acc(static_cast<std::size_t>(k_max));
    for (std::size_t i = 0; i < nodes; ++i) {
      const double theta = 0.5 * kPi * (rule.nodes[i] + 1.0);
      const double w = 0.5 * kPi * rule.weights[i] * kernel.psi(theta);
      const double x = std::cos(theta);
      if (q == 1) {
        for (int k = 1; k <= k_max; ++k) acc[k - 1] += w * std::cos(k * theta);
        continue;
      }
      const double jac = std::pow(std::sin(theta), q - 1);
      // Gegenbauer recurrence over k at this node.
      double c0 = 1.0;
      double c1 = 2.0 * lambda * x;
      acc[0] += w * jac * c1;
      for (int m = 1; m < k_max; ++m) {
        const double c2 = (2.0 * (m + lambda) * x * c1 - (m + 2.0 * lambda - 1.0) * c0) / (m + 1.0);
        c0 = c1;
        c1 = c2;
        acc[m] += w * jac * c1;
      }
    }
    std::vector<double> b(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
      b[k - 1] = q == 1 ? 2.0 / kPi * acc[k - 1].value()
                        : acc[k - 1].value() / gegenbauer_normalizer(k, q);
    }
    return b;
  };

  // psi carries absolute quadrature noise near 1e-10, so refinement stops
  // once successive rules agree to 1e-8 relative.
  std::vector<double> prev = integrate(128);
  for (std::size_t nodes = 256; nodes <= 4096; nodes *= 2) {
    std::vector<double> cur = integrate(nodes);
    bool converged = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (std::abs(cur[i] - prev[i]) > 1e-8 * std::abs(cur[i])) converged = false;
    }
    if (converged) return cur;
    prev = std::move(cur);
  }
  throw NumericalFailure("coef_quadrature_oracle: Gauss-Legendre refinement did not converge",
                         "q=" + std::to_string(q) + " k_max=" + std::to_string(k_max));
}

double coef_quadrature_oracle(int k, int q, const KernelEvaluator& kernel) {
  check_kq(k, q, "coef_quadrature_oracle");
  if (k > 50) throw DomainError("coef_quadrature_oracle: k must lie in [1, 50]");
  return coef_quadrature_oracle_range(k, q, kernel).back();
}

}  // namespace hyperunif
