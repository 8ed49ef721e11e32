#include "hyperunif/projected.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hyperunif/error.hpp"
#include "hyperunif/special.hpp"

namespace hyperunif {

ProjectedUniform::ProjectedUniform(int q) : q_(q) {
  if (q < 1) throw DomainError("ProjectedUniform: q must be >= 1");
  log_norm_ = -log_beta(0.5, 0.5 * q);
}

double ProjectedUniform::cdf(double x) const {
  x = std::clamp(x, -1.0, 1.0);
  switch (q_) {
    case 1:
      return 1.0 - std::acos(x) / std::numbers::pi;
    case 2:
      return 0.5 * (x + 1.0);
    default: {
      if (x == 0.0) return 0.5;
      const double tail = reg_inc_beta(x * x, 0.5, 0.5 * q_);
      return x > 0.0 ? 0.5 * (1.0 + tail) : 0.5 * (1.0 - tail);
    }
  }
}

double ProjectedUniform::pdf(double t) const {
  if (!(std::abs(t) <= 1.0)) throw DomainError("ProjectedUniform::pdf: |t| must be <= 1");
  if (q_ == 2) return 0.5;
  const double one_minus = (1.0 - t) * (1.0 + t);
  if (one_minus == 0.0) {
    return q_ == 1 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return std::exp(log_norm_ + (0.5 * q_ - 1.0) * std::log(one_minus));
}

}  // namespace hyperunif
