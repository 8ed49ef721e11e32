#ifndef HYPERUNIF_COEFFICIENTS_HPP_
#define HYPERUNIF_COEFFICIENTS_HPP_

#include <cstdint>
#include <vector>

#include "hyperunif/kernel.hpp"

namespace hyperunif {

/// d_{k,q} = C(q+k-2, q-1) + C(q+k-1, q-1), exactly. Throws
/// NumericalFailure when the value does not fit in 64 bits (e.g. q = 10,
/// k = 10^5); use dof_real there.
std::uint64_t dof(int k, int q);

/// d_{k,q} as a floating value, valid far beyond the 64-bit range.
double dof_real(int k, int q);

/// Value and condition number sum|t_m| / |sum t_m| of a terminating series.
struct SeriesValue {
  double value;
  double condition;
};

/// 4F3(1-k, q+k, (q+1)/2, 3q/2; q+1, q/2+1, (3q+1)/2; 1), summed term by term
/// (k terms) with per-term log-magnitude and sign bookkeeping and
/// compensated extended-precision accumulation.
SeriesValue coefficient_series(int k, int q);

/// Condition number above which coef_closed_form abandons the direct sum.
inline constexpr double kSeriesConditionLimit = 1e10;

/// b_{k,q}: 1/(pi^2 k^2) for q = 1, 1/(2(2k+3)(2k-1)) for q = 2, the
/// rational-in-k form for q = 3, and for q >= 4 the prefactor times the
/// terminating 4F3 above. If the 4F3 sum is worse conditioned than
/// kSeriesConditionLimit, the value is taken from coefficient_sequence,
/// which reaches the same 4F3 through its three-term recurrence in k.
double coef_closed_form(int k, int q);

/// b_{1,q}, ..., b_{K,q}. For q >= 4 the 4F3 values come from the forward
/// three-term recurrence in k (the 4F3 is a Wilson polynomial of degree k-1
/// evaluated at a fixed point), which is stable in that direction and O(K).
std::vector<double> coefficient_sequence(int q, int K);

/// Chebyshev polynomial T_n(x) = cos(n acos x).
double chebyshev_t(int n, double x);

/// Gegenbauer polynomial C_n^lambda(x) by the three-term recurrence.
double gegenbauer(int n, double lambda, double x);

/// c_{k,q} = 2^{3-q} pi Gamma(q+k-1) / ((q+2k-1) k! Gamma((q-1)/2)^2), q >= 2.
double gegenbauer_normalizer(int k, int q);

/// b_{k,q} from its integral definition against psi_q: Chebyshev projection
/// for q = 1 and Gegenbauer projection of order (q-1)/2 for q >= 2.
/// Gauss-Legendre in theta starting at 128 nodes and doubling until the
/// relative change is below 1e-8 (at most 4096 nodes). Throws
/// NumericalFailure without convergence and DomainError for k outside
/// [1, 50].
double coef_quadrature_oracle(int k, int q, const KernelEvaluator& kernel);

/// All b_{1..k_max,q} from the same quadrature, sharing psi evaluations.
std::vector<double> coef_quadrature_oracle_range(int k_max, int q, const KernelEvaluator& kernel);

}  // namespace hyperunif

#endif  // HYPERUNIF_COEFFICIENTS_HPP_
