#ifndef HYPERUNIF_CALIBRATION_HPP_
#define HYPERUNIF_CALIBRATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperunif/rng.hpp"

namespace hyperunif {

/// One critical value. Asymptotic rows carry K instead of n, M and seed.
struct NullTableRow {
  int q = 0;
  std::optional<std::size_t> n;  // empty: n = infinity
  double alpha = 0.0;
  double critical_value = 0.0;
  double std_error = 0.0;        // Monte Carlo standard error, 0 for asymptotic rows
  std::optional<std::size_t> M;
  std::optional<std::uint64_t> seed;
  std::optional<int> K;
};

/// Type-7 quantile (linear interpolation between order statistics) of a
/// sorted sample. Throws DomainError for empty input or p outside [0, 1].
double quantile_type7(std::span<const double> sorted, double p);

/// Empirical (1 - alpha)-quantiles of CvM_{n,q} over M uniform samples.
/// The standard error is half the spread of the order statistics at
/// M(1 - alpha) -/+ sqrt(M alpha (1 - alpha)). Throws DomainError for
/// M < 1000, n < 2 or alpha outside (0, 1).
std::vector<NullTableRow> calibrate_critical_values(int q, std::size_t n,
                                                    std::span<const double> alphas, std::size_t M,
                                                    const RngStream& rng);

/// Same table from the raw null statistics (sorted in place).
std::vector<NullTableRow> critical_values_from_null(int q, std::size_t n,
                                                    std::span<const double> alphas,
                                                    std::vector<double>& statistics,
                                                    std::uint64_t seed);

/// Inverts the K-term asymptotic tail.
std::vector<NullTableRow> asymptotic_critical_values(int q, int K, std::span<const double> alphas);

/// CSV with header q,n,alpha,critical_value,M,seed. Asymptotic rows print
/// n as "inf" and leave M and seed empty.
std::string null_table_csv(std::span<const NullTableRow> rows);

}  // namespace hyperunif

#endif  // HYPERUNIF_CALIBRATION_HPP_
