#ifndef HYPERUNIF_SPHERE_HPP_
#define HYPERUNIF_SPHERE_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hyperunif/rng.hpp"

namespace hyperunif {

/// Inputs whose norm is further than this from 1 are rejected at ingestion.
inline constexpr double kNormTolerance = 1e-6;

/// A point on the hypersphere of dimension q, stored as q+1 coordinates.
class UnitVector {
 public:
  /// Validates and renormalizes. Throws DomainError if fewer than two
  /// coordinates, non-finite entries, or | |x| - 1 | > kNormTolerance.
  explicit UnitVector(std::vector<double> coords);

  /// Scales any non-zero finite vector onto the sphere.
  static UnitVector normalize(std::vector<double> coords);

  int q() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

 private:
  struct Trusted {};
  UnitVector(std::vector<double> coords, Trusted) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

/// n points on the same hypersphere, stored row-major in one buffer.
class DirectionalSample {
 public:
  explicit DirectionalSample(const std::vector<UnitVector>& points);

  /// Wraps already-normalized row-major data. Throws DomainError on shape
  /// errors or rows violating kNormTolerance; rows are renormalized.
  DirectionalSample(int q, std::vector<double> rows);

  int q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(q_) + 1; }
  std::size_t n() const noexcept { return n_; }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim(), dim()};
  }
  std::span<const double> data() const noexcept { return data_; }

  UnitVector at(std::size_t i) const;

 private:
  int q_ = 0;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// sin(theta/2) and cos(theta/2) of the angle between two unit vectors,
/// obtained from the chord lengths |x-y|/2 and |x+y|/2. Unlike acos of the
/// dot product this keeps full relative accuracy near 0 and pi.
struct HalfAngle {
  double sin_half;
  double cos_half;

  double angle() const { return 2.0 * std::atan2(sin_half, cos_half); }
};

HalfAngle half_angle(std::span<const double> x, std::span<const double> y);

/// Surface area of the q-sphere, 2 pi^{(q+1)/2} / Gamma((q+1)/2).
double surface_area(int q);

/// n draws from the uniform distribution on the q-sphere (normalized
/// standard Gaussian vectors).
DirectionalSample sample_uniform(int q, std::size_t n, const RngStream& rng);

/// Same as above but drawing from an existing engine.
DirectionalSample sample_uniform(int q, std::size_t n, Engine& engine);

/// Default ceiling on materialized pair counts (about 1 GiB of doubles).
inline constexpr std::size_t kDefaultMaxPairs = std::size_t{1} << 27;

/// Angles theta_ij in [0, pi] for i < j in lexicographic order.
/// Throws DomainError if n < 2 or the pair count exceeds max_pairs; callers
/// above the cap should use for_each_pair instead.
std::vector<double> pairwise_angles(const DirectionalSample& s,
                                    std::size_t max_pairs = kDefaultMaxPairs);

/// Streams every pair (i < j) in lexicographic order without materializing.
template <typename Fn>
void for_each_pair(const DirectionalSample& s, Fn&& fn) {
  const std::size_t n = s.n();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto xi = s.point(i);
    for (std::size_t j = i + 1; j < n; ++j) fn(i, j, half_angle(xi, s.point(j)));
  }
}

/// Applies a (q+1)x(q+1) row-major matrix to every point, renormalizing.
DirectionalSample transform(const DirectionalSample& s, std::span<const double> matrix);

}  // namespace hyperunif

#endif  // HYPERUNIF_SPHERE_HPP_
