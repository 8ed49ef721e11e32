#include "hyperunif/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hyperunif/error.hpp"
#include "hyperunif/parallel.hpp"
#include "hyperunif/projected.hpp"
#include "hyperunif/quadrature.hpp"
#include "hyperunif/summation.hpp"

namespace hyperunif {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kRowBlock = 32;

// int_0^1 (F_n(u) - u)^2 du for the empirical cdf F_n of u-values in [0,1]:
// (1/n^2) sum_{i,j} (1 - max(u_i, u_j)) - (1/n) sum_i (1 - u_i^2) + 1/3.
double inner_cvm(std::span<const double> u) {
  const double n = static_cast<double>(u.size());
  CompensatedSum<> pair;
  CompensatedSum<> single;
  for (std::size_t i = 0; i < u.size(); ++i) {
    pair += 1.0 - u[i];
    for (std::size_t j = i + 1; j < u.size(); ++j) pair += 2.0 * (1.0 - std::max(u[i], u[j]));
    single += 1.0 - u[i] * u[i];
  }
  return pair.value() / (n * n) - single.value() / n + 1.0 / 3.0;
}

double wrap_two_pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double oracle_circle(const DirectionalSample& s) {
  const std::size_t n = s.n();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = std::atan2(s.point(i)[1], s.point(i)[0]);

  // Kinks of the integrand in the projection angle g: each U_i = 1 - |g - phi_i|/pi
  // (folded) kinks at phi_i and phi_i + pi; max(U_i, U_j) switches where the
  // two folded distances coincide.
  std::vector<double> breaks{0.0, 2.0 * kPi};
  for (std::size_t i = 0; i < n; ++i) {
    breaks.push_back(wrap_two_pi(phi[i]));
    breaks.push_back(wrap_two_pi(phi[i] + kPi));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mid = 0.5 * (phi[i] + phi[j]);
      breaks.push_back(wrap_two_pi(mid));
      breaks.push_back(wrap_two_pi(mid + kPi));
    }
  }
  std::sort(breaks.begin(), breaks.end());

  const auto& rule = gauss_legendre(4);
  std::vector<double> u(n);
  CompensatedSum<> total;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b];
    const double hi = breaks[b + 1];
    if (hi <= lo) continue;
    const double half = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double g = lo + half * (rule.nodes[k] + 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        double d = std::abs(wrap_two_pi(g - phi[i]));
        if (d > kPi) d = 2.0 * kPi - d;
        u[i] = 1.0 - d / kPi;
      }
      total += half * rule.weights[k] * inner_cvm(u);
    }
  }
  return static_cast<double>(n) * total.value() / (2.0 * kPi);
}

double oracle_sphere(const DirectionalSample& s, const OracleResolution& res) {
  const std::size_t n = s.n();
  const auto& polar = gauss_legendre(res.polar_nodes);
  const std::size_t na = res.azimuth_nodes;
  std::vector<double> rows(polar.nodes.size());
  parallel_for(0, polar.nodes.size(), [&](std::size_t a) {
    const double z = polar.nodes[a];
    const double r = std::sqrt((1.0 - z) * (1.0 + z));
    std::vector<double> u(n);
    CompensatedSum<> ring;
    for (std::size_t b = 0; b < na; ++b) {
      const double phi = 2.0 * kPi * static_cast<double>(b) / static_cast<double>(na);
      const double g0 = r * std::cos(phi);
      const double g1 = r * std::sin(phi);
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = s.point(i);
        u[i] = 0.5 * (1.0 + x[0] * g0 + x[1] * g1 + x[2] * z);
      }
      ring += inner_cvm(u);
    }
    rows[a] = polar.weights[a] * ring.value() * (2.0 * kPi / static_cast<double>(na));
  });
  CompensatedSum<> total;
  for (double v : rows) total += v;
  return static_cast<double>(n) * total.value() / (4.0 * kPi);
}

}  // namespace

double cvm_statistic(const DirectionalSample& s, const KernelEvaluator& kernel) {
  if (s.q() != kernel.q()) throw DomainError("cvm_statistic: sample dimension does not match kernel q");
  const std::size_t n = s.n();
  const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(0, blocks, [&](std::size_t b) {
    CompensatedSum<> acc;
    const std::size_t end = std::min(n, (b + 1) * kRowBlock);
    for (std::size_t i = b * kRowBlock; i < end; ++i) {
      const auto xi = s.point(i);
      for (std::size_t j = i + 1; j < n; ++j) acc += kernel.psi(half_angle(xi, s.point(j)));
    }
    partial[b] = acc.value();
  });
  CompensatedSum<> total;
  for (double v : partial) total += v;
  const double nd = static_cast<double>(n);
  return 2.0 / nd * total.value() + (3.0 - 2.0 * nd) / 6.0;
}

double watson_h(double theta) {
  const double t = theta / (2.0 * kPi);
  return 0.5 * (t * t - t + 1.0 / 6.0);
}

double watson_statistic(std::span<const double> angles) {
  const std::size_t n = angles.size();
  if (n == 0) throw DomainError("watson_statistic: need at least one angle");
  CompensatedSum<> acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = std::abs(wrap_two_pi(angles[i] - angles[j]));
      if (d > kPi) d = 2.0 * kPi - d;
      acc += 2.0 * watson_h(d);
    }
  }
  const double nd = static_cast<double>(n);
  return (acc.value() + nd * watson_h(0.0)) / nd;
}

double cvm_definition_oracle(const DirectionalSample& s, const OracleResolution& res) {
  switch (s.q()) {
    case 1:
      return oracle_circle(s);
    case 2:
      return oracle_sphere(s, res);
    default:
      throw DomainError("cvm_definition_oracle: only q = 1 and q = 2 are supported");
  }
}

}  // namespace hyperunif
