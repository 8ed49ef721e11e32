#include "hyperunif/sphere.hpp"

#include <numbers>
#include <random>
#include <string>

#include "hyperunif/error.hpp"
#include "hyperunif/parallel.hpp"

namespace hyperunif {
namespace {

double norm_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Validates one row and rescales it in place.
void check_and_normalize(std::span<double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("non-finite coordinate");
  }
  const double norm = norm_of(v);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw DomainError("vector norm " + std::to_string(norm) + " deviates from 1 by more than 1e-6");
  }
  for (double& x : v) x /= norm;
}

}  // namespace

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("unit vector needs at least 2 coordinates (q >= 1)");
  check_and_normalize(coords_);
}

UnitVector UnitVector::normalize(std::vector<double> coords) {
  if (coords.size() < 2) throw DomainError("unit vector needs at least 2 coordinates (q >= 1)");
  for (double x : coords) {
    if (!std::isfinite(x)) throw DomainError("non-finite coordinate");
  }
  const double norm = norm_of(coords);
  if (!(norm > 0.0)) throw DomainError("cannot normalize the zero vector");
  for (double& x : coords) x /= norm;
  return UnitVector(std::move(coords), Trusted{});
}

DirectionalSample::DirectionalSample(const std::vector<UnitVector>& points) {
  if (points.empty()) throw DomainError("sample must contain at least one point");
  q_ = points.front().q();
  n_ = points.size();
  data_.reserve(n_ * dim());
  for (const auto& p : points) {
    if (p.q() != q_) throw DomainError("all points must share the same dimension");
    data_.insert(data_.end(), p.coords().begin(), p.coords().end());
  }
}

DirectionalSample::DirectionalSample(int q, std::vector<double> rows) : q_(q), data_(std::move(rows)) {
  if (q < 1) throw DomainError("q must be >= 1");
  if (data_.empty() || data_.size() % dim() != 0) {
    throw DomainError("row buffer size is not a positive multiple of q+1");
  }
  n_ = data_.size() / dim();
  for (std::size_t i = 0; i < n_; ++i) {
    check_and_normalize(std::span<double>(data_.data() + i * dim(), dim()));
  }
}

UnitVector DirectionalSample::at(std::size_t i) const {
  const auto p = point(i);
  return UnitVector::normalize(std::vector<double>(p.begin(), p.end()));
}

HalfAngle half_angle(std::span<const double> x, std::span<const double> y) {
  double minus = 0.0;
  double plus = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    const double s = x[k] + y[k];
    minus += d * d;
    plus += s * s;
  }
  return {0.5 * std::sqrt(minus), 0.5 * std::sqrt(plus)};
}

double surface_area(int q) {
  if (q < 1) throw DomainError("surface_area: q must be >= 1");
  const double h = 0.5 * (q + 1);
  return 2.0 * std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

DirectionalSample sample_uniform(int q, std::size_t n, Engine& engine) {
  if (q < 1) throw DomainError("sample_uniform: q must be >= 1");
  if (n < 1) throw DomainError("sample_uniform: n must be >= 1");
  const std::size_t d = static_cast<std::size_t>(q) + 1;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> rows(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = rows.data() + i * d;
    double norm = 0.0;
    while (!(norm > 0.0)) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        row[k] = normal(engine);
        s += row[k] * row[k];
      }
      norm = std::sqrt(s);
    }
    for (std::size_t k = 0; k < d; ++k) row[k] /= norm;
  }
  return DirectionalSample(q, std::move(rows));
}

DirectionalSample sample_uniform(int q, std::size_t n, const RngStream& rng) {
  Engine engine = rng.engine();
  return sample_uniform(q, n, engine);
}

std::vector<double> pairwise_angles(const DirectionalSample& s, std::size_t max_pairs) {
  const std::size_t n = s.n();
  if (n < 2) throw DomainError("pairwise_angles: need at least two points");
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs > max_pairs) {
    throw DomainError("pairwise_angles: " + std::to_string(pairs) +
                      " pairs exceed the materialization cap; stream with for_each_pair");
  }
  std::vector<double> out(pairs);
  // Row i starts at offset i*n - i*(i+1)/2 in lexicographic order.
  parallel_for(0, n - 1, [&](std::size_t i) {
    std::size_t offset = i * n - i * (i + 1) / 2;
    const auto xi = s.point(i);
    for (std::size_t j = i + 1; j < n; ++j) out[offset++] = half_angle(xi, s.point(j)).angle();
  });
  return out;
}

DirectionalSample transform(const DirectionalSample& s, std::span<const double> matrix) {
  const std::size_t d = s.dim();
  if (matrix.size() != d * d) throw DomainError("transform: matrix must be (q+1)x(q+1)");
  std::vector<double> rows(s.n() * d);
  for (std::size_t i = 0; i < s.n(); ++i) {
    const auto x = s.point(i);
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) acc += matrix[r * d + c] * x[c];
      rows[i * d + r] = acc;
      norm += acc * acc;
    }
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) rows[i * d + r] /= norm;
  }
  return DirectionalSample(s.q(), std::move(rows));
}

}  // namespace hyperunif
