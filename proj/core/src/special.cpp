#include "hyperunif/special.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "hyperunif/error.hpp"

namespace hyperunif {
namespace {

constexpr int kMaxFractionTerms = 10000;

// Continued fraction for I_x(a,b) (Numerical Recipes 6.4 form), evaluated by
// the modified Lentz method.
double beta_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw NumericalFailure("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double reg_inc_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("reg_inc_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_fraction(x, a, b) / a;
  }
  return 1.0 - std::exp(log_front) * beta_fraction(1.0 - x, b, a) / b;
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (lambda < 1.0) {
    // Jacobi theta form of the CDF, fast for small lambda.
    const double c = -pi * pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = std::exp(c * (2 * j - 1) * (2 * j - 1));
      sum += term;
      if (term < 1e-300) break;
    }
    return 1.0 - std::sqrt(2.0 * pi) / lambda * sum;
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_survival(double dof, double x) {
  if (!(dof > 0.0)) throw DomainError("chi_square_survival: dof must be positive");
  if (!(x > 0.0)) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace hyperunif
