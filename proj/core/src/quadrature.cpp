#include "hyperunif/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace hyperunif {
namespace {

GaussLegendreRule build_rule(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

}  // namespace hyperunif
