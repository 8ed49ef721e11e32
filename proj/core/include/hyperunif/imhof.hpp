#ifndef HYPERUNIF_IMHOF_HPP_
#define HYPERUNIF_IMHOF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hyperunif/mixture.hpp"

namespace hyperunif {

struct ImhofOptions {
  /// Target absolute error of each tail probability (truncation of the
  /// u-range plus quadrature).
  double abs_tol = 1e-8;
  std::size_t max_intervals = 400000;
};

/// P[sum_k w_k chi^2_{d_k} > x] by Imhof's inversion
///
///   1/2 + (1/pi) int_0^inf sin(theta(u)) / (u rho(u)) du,
///   theta(u) = (1/2) sum d_k atan(w_k u) - x u / 2,
///   rho(u)   = prod (1 + w_k^2 u^2)^{d_k / 4}.
///
/// The range is cut at the smallest U for which Imhof's bound (applied to
/// the best leading subset of terms) is below a fifth of abs_tol; mixtures
/// with so few degrees of freedom that this U spans too many oscillations
/// switch to half-period panels summed with Wynn's epsilon algorithm.
/// Terms with w_k U < 0.05 enter through power sums of their weights.
/// x <= 0 returns 1. Results are clamped to [0, 1]. Throws NumericalFailure
/// when the error budget cannot be met.
double imhof_tail(const ChiSqMixture& m, double x, const ImhofOptions& opt = {});

/// Same for many x at once; the mixture sums are shared across all points.
std::vector<double> imhof_tail(const ChiSqMixture& m, std::span<const double> xs,
                               const ImhofOptions& opt = {});

/// Smallest x with imhof_tail(m, x) = alpha, to |tail - alpha| <= prob_tol.
/// Bracket [0, mean + 20 sd] (widened if needed), then Illinois iteration.
/// Throws DomainError unless 0 < alpha < 1 and NumericalFailure if no
/// bracket is found.
double critical_value(const ChiSqMixture& m, double alpha, double prob_tol = 1e-6,
                      const ImhofOptions& opt = {});

/// Vector form; all roots advance together so each Imhof pass is shared.
std::vector<double> critical_values(const ChiSqMixture& m, std::span<const double> alphas,
                                    double prob_tol = 1e-6, const ImhofOptions& opt = {});

struct TruncationPoint {
  double x;            // evaluation point
  double probability;  // tail at the smaller K
  double abs_error;    // |tail(K_small) - tail(K_ref)|
};

/// Inverse images under `m` of the probabilities (i - 1/2)/points, i = 1..points.
std::vector<double> default_truncation_grid(const ChiSqMixture& m, std::size_t points = 200);

/// Compares tails of two truncations of the same law on x_grid (defaulting
/// to default_truncation_grid(small)).
std::vector<TruncationPoint> truncation_error_profile(const ChiSqMixture& small,
                                                      const ChiSqMixture& ref,
                                                      std::span<const double> x_grid = {});

/// Builds both mixtures; K_small == K_ref yields exact zeros.
std::vector<TruncationPoint> truncation_error_profile(int q, int K_small, int K_ref,
                                                      std::span<const double> x_grid = {});

}  // namespace hyperunif

#endif  // HYPERUNIF_IMHOF_HPP_
