#ifndef HYPERUNIF_UNIFORMITY_TESTS_HPP_
#define HYPERUNIF_UNIFORMITY_TESTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperunif/kernel.hpp"
#include "hyperunif/rng.hpp"
#include "hyperunif/sphere.hpp"

namespace hyperunif {

enum class TestName { cvm, ks, ccf, rayleigh, gine_fn };
enum class PValueMethod { asymptotic, monte_carlo };

std::string_view to_string(TestName t);
std::string_view to_string(PValueMethod m);
/// Accepts the CLI spellings ("cvm", "ks", "ccf", "rayleigh", "gine-fn";
/// "asymptotic", "mc"/"monte-carlo"). Throws DomainError otherwise.
TestName parse_test_name(std::string_view s);
PValueMethod parse_pvalue_method(std::string_view s);

struct TestOutcome {
  TestName test = TestName::cvm;
  double statistic = 0.0;
  double p_value = 1.0;
  PValueMethod method = PValueMethod::asymptotic;
  std::optional<std::size_t> replicates;  // set for monte_carlo
  std::optional<int> K;                   // set for asymptotic CvM
  std::optional<std::uint64_t> seed;      // set whenever randomness was used
  int q = 0;
  std::size_t n = 0;
  /// Projection directions (KS, CCF), one row per direction.
  std::vector<std::vector<double>> directions;
};

/// The gamma_1..gamma_k of the projection tests.
struct ProjectionSet {
  std::vector<UnitVector> directions;
  std::size_t k() const noexcept { return directions.size(); }
};

/// k directions drawn from the uniform law on the q-sphere.
ProjectionSet draw_directions(int q, std::size_t k, const RngStream& rng);

/// (1 + #{reference >= observed}) / (M + 1); with upper = false the count
/// is #{reference <= observed} instead.
double mc_pvalue(double observed, std::span<const double> reference, bool upper = true);

/// `statistic` on M uniform samples of size n; replicate i draws from
/// rng.child(purpose::kNullReference, i), so the result is independent of
/// the thread count.
std::vector<double> simulate_null(int q, std::size_t n, std::size_t M, const RngStream& rng,
                                  const std::function<double(const DirectionalSample&)>& statistic);

// Projected Kolmogorov-Smirnov ------------------------------------------------

/// sup_x |F_{n,gamma}(x) - F_q(x)|, via the sorted F_q(X_i'gamma).
double ks_projection_statistic(const DirectionalSample& s, std::span<const double> gamma);
double ks_projection_statistic(const DirectionalSample& s, const UnitVector& gamma);

/// Upper tail of the Kolmogorov law at sqrt(n) * stat.
double ks_asymptotic_pvalue(double stat, std::size_t n);

/// Null KS statistics for sample size n. They do not depend on q or the
/// direction, so one reference serves every direction.
std::vector<double> ks_null_reference(std::size_t n, std::size_t M, const RngStream& rng);

/// Asymptotic or Monte Carlo p-value; the Monte Carlo branch simulates
/// mc_reps uniform samples from rng.
double ks_projection_pvalue(double stat, std::size_t n, PValueMethod method,
                            const RngStream& rng = {}, std::size_t mc_reps = 9999);

/// Single random direction, drawn from rng.child(purpose::kDirections, 0).
TestOutcome ks_test(const DirectionalSample& s, PValueMethod method, const RngStream& rng,
                    std::size_t mc_reps = 9999);

// CCF: minimum of k projected KS p-values ---------------------------------------

struct CcfOptions {
  /// Per-direction KS p-values (asymptotic by default).
  PValueMethod ks_method = PValueMethod::asymptotic;
  std::size_t ks_reference_reps = 9999;
};

/// min_j p-value of KS_{n,gamma_j}. `ks_reference` is required (and used)
/// only when opt.ks_method is monte_carlo.
double ccf_statistic(const DirectionalSample& s, const ProjectionSet& dirs,
                     const CcfOptions& opt = {}, std::span<const double> ks_reference = {});

/// Draws the directions once, then calibrates by re-testing mc_reps uniform
/// samples against the same directions. Throws DomainError if k < 1 or
/// mc_reps < 99.
TestOutcome ccf_test(const DirectionalSample& s, std::size_t k, const RngStream& rng,
                     std::size_t mc_reps, const CcfOptions& opt = {});

// Rayleigh -----------------------------------------------------------------------

/// (q + 1) n |mean|^2, asymptotically chi^2_{q+1}.
double rayleigh_statistic(const DirectionalSample& s);
TestOutcome rayleigh_test(const DirectionalSample& s, PValueMethod method, const RngStream& rng,
                          std::size_t mc_reps = 9999);

// Gine F_n = 4 A_n + G_n --------------------------------------------------------

/// Ajne A_n = n/4 - (1/(n pi)) sum_{i<j} theta_ij plus Gine
/// G_n = n/2 - (q/(2n)) [Gamma(q/2) / Gamma((q+1)/2)]^2 sum_{i<j} sin theta_ij.
/// Throws DomainError for q = 1.
double gine_fn_statistic(const DirectionalSample& s);
/// Monte Carlo p-value only.
TestOutcome gine_fn_test(const DirectionalSample& s, const RngStream& rng, std::size_t mc_reps = 9999);

// Projected Cramer-von Mises -------------------------------------------------

struct CvmTestOptions {
  int K = 10000;                       // mixture truncation for asymptotic p-values
  std::filesystem::path cache_dir;     // mixture cache; empty disables it
};

/// Kernel for CvM statistics in dimension q, with the interpolation table
/// built when the kernel needs quadrature (q >= 4).
KernelEvaluator make_cvm_kernel(int q);

/// Asymptotic p-value from the K-term mixture, or Monte Carlo. Throws
/// DomainError if n < 2.
TestOutcome cvm_test(const DirectionalSample& s, PValueMethod method, const RngStream& rng,
                     std::size_t mc_reps = 9999, const CvmTestOptions& opt = {});

// Alternatives -------------------------------------------------------------------

/// von Mises-Fisher sample with mean direction mu and concentration kappa
/// (Wood's rejection scheme). kappa = 0 gives the uniform law. Throws
/// DomainError for kappa < 0.
DirectionalSample sample_vmf(int q, std::size_t n, double kappa, const UnitVector& mu,
                             const RngStream& rng);

}  // namespace hyperunif

#endif  // HYPERUNIF_UNIFORMITY_TESTS_HPP_
