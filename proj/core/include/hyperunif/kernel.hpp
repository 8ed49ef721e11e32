#ifndef HYPERUNIF_KERNEL_HPP_
#define HYPERUNIF_KERNEL_HPP_

#include <cstddef>
#include <memory>
#include <vector>

#include "hyperunif/projected.hpp"
#include "hyperunif/sphere.hpp"

namespace hyperunif {

/// Pairwise kernel psi_q(theta) of the projected Cramer-von Mises statistic.
///
/// q = 1, 2, 3 have elementary forms. For q >= 4
///
///   psi_q(theta) = -3/4 + theta/(2 pi) + 2 F_q(c)^2
///                  - 4 int_0^c F_q(t) F_{q-1}(t tan(theta/2) / sqrt(1-t^2)) dF_q(t),
///
/// with c = cos(theta/2), evaluated by adaptive Gauss-Kronrod after t = c v,
/// so the integration range is always [0, 1] and the inner argument stays
/// in [0, 1] up to rounding. psi_q(0) = 1/2 and psi_q(pi) = 1/4 for all q.
class KernelEvaluator {
 public:
  static constexpr std::size_t kDefaultTablePoints = 4096;

  /// Throws DomainError if q < 1 or quad_tol is not positive.
  explicit KernelEvaluator(int q, double quad_tol = 1e-10);

  int q() const noexcept { return q_; }
  double quad_tol() const noexcept { return quad_tol_; }

  /// psi_q(theta); throws DomainError unless 0 <= theta <= pi.
  /// Never consults the memo table.
  double psi(double theta) const;

  /// psi_q for the angle with the given half-angle sine/cosine. Uses the
  /// memo table when one has been built (q >= 4 only).
  double psi(const HalfAngle& h) const;

  /// Tabulates psi_q on an equispaced theta grid for cubic interpolation.
  /// No-op for q <= 3 where the closed forms are cheaper than a lookup.
  void build_table(std::size_t points = kDefaultTablePoints);
  bool has_table() const noexcept { return table_ != nullptr; }

  /// Interpolated value; requires has_table().
  double psi_interpolated(double theta) const;

 private:
  double psi_general(double theta, double sin_half, double cos_half) const;

  int q_;
  double quad_tol_;
  ProjectedUniform dist_;
  ProjectedUniform lower_;  // dimension q-1, used for q >= 4
  std::shared_ptr<const std::vector<double>> table_;
};

}  // namespace hyperunif

#endif  // HYPERUNIF_KERNEL_HPP_
