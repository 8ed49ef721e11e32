#ifndef HYPERUNIF_STATISTIC_HPP_
#define HYPERUNIF_STATISTIC_HPP_

#include <cstddef>
#include <span>

#include "hyperunif/kernel.hpp"
#include "hyperunif/sphere.hpp"

namespace hyperunif {

/// CvM_{n,q} = (2/n) sum_{i<j} psi_q(theta_ij) + (3 - 2n)/6.
///
/// Pair terms are accumulated with Neumaier summation inside fixed row
/// blocks and the block totals are added in order, so the value is
/// bit-identical for any thread count. Throws DomainError if the sample
/// dimension differs from kernel.q().
double cvm_statistic(const DirectionalSample& s, const KernelEvaluator& kernel);

/// Watson's h(theta) = (theta^2/(4 pi^2) - theta/(2 pi) + 1/6) / 2.
double watson_h(double theta);

/// U_n^2 = (1/n) sum_{i,j} h(theta_ij) over all ordered pairs including the
/// diagonal, for circular positions given in radians.
double watson_statistic(std::span<const double> angles);

/// Resolution of the projection average in cvm_definition_oracle.
struct OracleResolution {
  std::size_t polar_nodes = 1200;    // q = 2: Gauss-Legendre nodes in cos(colatitude)
  std::size_t azimuth_nodes = 2400;  // q = 2: trapezoid nodes in longitude
};

/// Direct evaluation of n E_gamma[ int (F_{n,gamma} - F_q)^2 dF_q ] for
/// verification, q in {1, 2}. The inner integral is exact: after u = F_q(x)
/// it reduces to sums of max(U_i, U_j) and U_i^2. For q = 1 the average over
/// gamma is split at every kink of those sums and integrated exactly; for
/// q = 2 it uses a product grid. Throws DomainError for other q.
double cvm_definition_oracle(const DirectionalSample& s, const OracleResolution& res = {});

}  // namespace hyperunif

#endif  // HYPERUNIF_STATISTIC_HPP_
