#ifndef HYPERUNIF_SPECIAL_HPP_
#define HYPERUNIF_SPECIAL_HPP_

namespace hyperunif {

/// log B(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), absolute error below 1e-13.
/// Continued fraction (modified Lentz) on the branch x < (a+1)/(a+b+2),
/// otherwise through I_x(a, b) = 1 - I_{1-x}(b, a).
/// Throws DomainError for x outside [0, 1] or non-positive a, b.
double reg_inc_beta(double x, double a, double b);

/// P[K > lambda] for the Kolmogorov limit law of sqrt(n) * D_n.
double kolmogorov_survival(double lambda);

/// P[chi^2_dof > x].
double chi_square_survival(double dof, double x);

}  // namespace hyperunif

#endif  // HYPERUNIF_SPECIAL_HPP_
