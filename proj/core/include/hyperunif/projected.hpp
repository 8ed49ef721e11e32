#ifndef HYPERUNIF_PROJECTED_HPP_
#define HYPERUNIF_PROJECTED_HPP_

namespace hyperunif {

/// Law of gamma'U for U uniform on the q-sphere and any fixed unit gamma.
/// Density B(1/2, q/2)^{-1} (1 - t^2)^{q/2 - 1} on [-1, 1].
class ProjectedUniform {
 public:
  /// Throws DomainError if q < 1.
  explicit ProjectedUniform(int q);

  int q() const noexcept { return q_; }

  /// F_q(x). Arguments outside [-1, 1] are clamped. q = 1 and q = 2 use
  /// their elementary forms, other q go through the incomplete beta.
  double cdf(double x) const;

  /// Density at t, |t| <= 1. For q = 1 the endpoints return +infinity.
  double pdf(double t) const;

 private:
  int q_;
  double log_norm_;  // -log B(1/2, q/2)
};

}  // namespace hyperunif

#endif  // HYPERUNIF_PROJECTED_HPP_
