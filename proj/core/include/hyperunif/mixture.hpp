#ifndef HYPERUNIF_MIXTURE_HPP_
#define HYPERUNIF_MIXTURE_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace hyperunif {

/// sum_k w_k chi^2_{d_k}: the truncated asymptotic null law of CvM_{n,q}.
/// Degrees of freedom are stored as reals because d_{k,q} leaves the 64-bit
/// range for moderate q and large k; every value is an integer.
struct ChiSqMixture {
  int q = 0;
  std::vector<double> weights;
  std::vector<double> dofs;
  std::size_t requested_K = 0;  // K asked for; weights.size() may be smaller after the guard

  std::size_t K() const noexcept { return weights.size(); }

  /// sum w_k d_k.
  double mean() const;
  /// 2 sum w_k^2 d_k.
  double variance() const;
};

struct MixtureOptions {
  /// Beyond this k (q >= 4 only) a term whose w_k d_k falls below
  /// guard_relative times the running total ends the mixture.
  int guard_start_k = 2000;
  double guard_relative = 1e-14;
};

/// w_{k,q} from b_{k,q}: b/2 for q = 1, (q-1)/(q-1+2k) b otherwise.
double mixture_weight(int k, int q, double b);

/// w_k = b_{k,1}/2 for q = 1 and (q-1)/(q-1+2k) b_{k,q} for q >= 2, k <= K.
/// Throws DomainError for q < 1 or K < 1.
ChiSqMixture build_mixture(int q, int K, const MixtureOptions& opt = {});

/// Versioned JSON document {version, q, K, requested_K, weights[], dofs[]}.
std::string mixture_to_json(const ChiSqMixture& m);
/// Throws ParseError on malformed documents or unsupported versions.
ChiSqMixture mixture_from_json(const std::string& text);

/// Mixture for (q, K) from `cache_dir` if a valid cached document exists,
/// otherwise built and written there. An empty path disables caching.
ChiSqMixture cached_mixture(int q, int K, const std::filesystem::path& cache_dir);

}  // namespace hyperunif

#endif  // HYPERUNIF_MIXTURE_HPP_
