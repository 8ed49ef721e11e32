#ifndef HYPERUNIF_TESTS_HELPERS_HPP_
#define HYPERUNIF_TESTS_HELPERS_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hyperunif/sphere.hpp"

namespace hyperunif::testing {

// Random orthogonal matrix (row-major, dim x dim) by Gram-Schmidt on
// Gaussian columns.
inline std::vector<double> random_rotation(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> z;
  std::vector<std::vector<double>> cols(dim, std::vector<double>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    for (auto& v : cols[c]) v = z(eng);
    for (std::size_t p = 0; p < c; ++p) {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += cols[c][i] * cols[p][i];
      for (std::size_t i = 0; i < dim; ++i) cols[c][i] -= dot * cols[p][i];
    }
    double norm = 0.0;
    for (double v : cols[c]) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : cols[c]) v /= norm;
  }
  std::vector<double> m(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m[r * dim + c] = cols[c][r];
  }
  return m;
}

inline DirectionalSample circle_sample(const std::vector<double>& angles) {
  std::vector<double> rows;
  for (double a : angles) {
    rows.push_back(std::cos(a));
    rows.push_back(std::sin(a));
  }
  return DirectionalSample(1, std::move(rows));
}

}  // namespace hyperunif::testing

#endif  // HYPERUNIF_TESTS_HELPERS_HPP_
