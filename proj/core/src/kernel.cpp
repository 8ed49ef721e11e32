#include "hyperunif/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperunif/error.hpp"
#include "hyperunif/parallel.hpp"
#include "hyperunif/quadrature.hpp"

namespace hyperunif {
namespace {

constexpr double kPi = std::numbers::pi;

double psi_circle(double theta) {
  const double t = theta / (2.0 * kPi);
  return 0.5 + t * (t - 1.0);
}

// (pi - theta) tan(theta/2), continuous at theta = pi where it tends to 2.
double cotangent_term(double theta, double sin_half, double cos_half) {
  const double x = kPi - theta;
  if (x < 1e-8) return 2.0 - x * x / 6.0;
  return x * sin_half / cos_half;
}

}  // namespace

KernelEvaluator::KernelEvaluator(int q, double quad_tol)
    : q_(q), quad_tol_(quad_tol), dist_(q), lower_(std::max(1, q - 1)) {
  if (!(quad_tol > 0.0)) throw DomainError("KernelEvaluator: quad_tol must be positive");
}

double KernelEvaluator::psi(double theta) const {
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("psi: theta must lie in [0, pi]");
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  switch (q_) {
    case 1:
      return psi_circle(theta);
    case 2:
      return 0.5 - 0.25 * s;
    case 3:
      return psi_circle(theta) +
             (cotangent_term(theta, s, c) - 2.0 * s * s) / (4.0 * kPi * kPi);
    default:
      return psi_general(theta, s, c);
  }
}

double KernelEvaluator::psi(const HalfAngle& h) const {
  switch (q_) {
    case 1:
      return psi_circle(h.angle());
    case 2:
      return 0.5 - 0.25 * h.sin_half;
    case 3: {
      const double theta = h.angle();
      return psi_circle(theta) + (cotangent_term(theta, h.sin_half, h.cos_half) -
                                  2.0 * h.sin_half * h.sin_half) /
                                     (4.0 * kPi * kPi);
    }
    default: {
      const double theta = h.angle();
      if (table_) return psi_interpolated(theta);
      return psi_general(theta, h.sin_half, h.cos_half);
    }
  }
}

double KernelEvaluator::psi_general(double theta, double sin_half, double cos_half) const {
  const double c = cos_half;
  const double fc = dist_.cdf(c);
  double integral = 0.0;
  if (c > 0.0) {
    auto integrand = [&](double v) {
      const double t = c * v;
      const double arg = v * sin_half / std::sqrt((1.0 - t) * (1.0 + t));
      return dist_.cdf(t) * lower_.cdf(arg) * dist_.pdf(t);
    };
    AdaptiveOptions opt;
    opt.abs_tol = 0.25 * quad_tol_ / c;
    integral = c * integrate_adaptive(integrand, 0.0, 1.0, opt).value;
  }
  return -0.75 + theta / (2.0 * kPi) + 2.0 * fc * fc - 4.0 * integral;
}

void KernelEvaluator::build_table(std::size_t points) {
  if (q_ <= 3) return;
  if (points < 4) throw DomainError("build_table: need at least 4 grid points");
  auto values = std::make_shared<std::vector<double>>(points);
  const double h = kPi / static_cast<double>(points - 1);
  parallel_for(0, points, [&](std::size_t i) {
    const double theta = std::min(kPi, h * static_cast<double>(i));
    (*values)[i] = psi(theta);
  });
  table_ = std::move(values);
}

double KernelEvaluator::psi_interpolated(double theta) const {
  const auto& y = *table_;
  const std::size_t n = y.size();
  const double h = kPi / static_cast<double>(n - 1);
  const double pos = std::clamp(theta, 0.0, kPi) / h;
  // Four-point Lagrange stencil [k-1, k+2], shifted inward at the ends.
  auto k = static_cast<std::ptrdiff_t>(pos);
  k = std::clamp<std::ptrdiff_t>(k, 1, static_cast<std::ptrdiff_t>(n) - 3);
  const double t = pos - static_cast<double>(k);
  const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1], y3 = y[k + 2];
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * y0 + w1 * y1 + w2 * y2 + w3 * y3;
}

}  // namespace hyperunif
