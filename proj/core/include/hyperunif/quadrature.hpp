#ifndef HYPERUNIF_QUADRATURE_HPP_
#define HYPERUNIF_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hyperunif/error.hpp"

namespace hyperunif {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes by Newton iteration on P_n. Rules are cached
/// per n; the returned reference stays valid for the process lifetime.
const GaussLegendreRule& gauss_legendre(std::size_t n);

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980726125, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr std::size_t kKronrodPoints = 21;

/// The 21 abscissae of the rule mapped to [a, b], ordered left to right.
inline std::array<double, kKronrodPoints> kronrod_abscissae(double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, kKronrodPoints> u{};
  for (std::size_t i = 0; i < 10; ++i) {
    u[i] = c - h * kKronrodNodes[i];
    u[20 - i] = c + h * kKronrodNodes[i];
  }
  u[10] = c;
  return u;
}

}  // namespace detail

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  std::size_t initial_pieces = 1;
  std::size_t max_intervals = 20000;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of a family of m
/// integrands sharing one subdivision. `fill(a, b, values)` receives an
/// interval and must write the m integrand values at each of the 21
/// abscissae of detail::kronrod_abscissae(a, b) into values[node * m + j].
/// The interval with the largest error (max over the family) is bisected
/// until the summed error is below abs_tol. Throws NumericalFailure if
/// max_intervals is exhausted.
template <typename Fill>
std::vector<QuadratureResult> integrate_adaptive_family(Fill&& fill, double a, double b,
                                                        std::size_t m,
                                                        const AdaptiveOptions& opt) {
  struct Piece {
    double a, b, err;
    std::vector<double> value;
    std::vector<double> error;
  };
  std::vector<double> buf(detail::kKronrodPoints * m);
  auto evaluate = [&](double lo, double hi) {
    fill(lo, hi, std::span<double>(buf));
    Piece p{lo, hi, 0.0, std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    const double h = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < m; ++j) {
      double kronrod = detail::kKronrodWeights[10] * buf[10 * m + j];
      double gauss = 0.0;
      for (std::size_t i = 0; i < 10; ++i) {
        const double pair = buf[i * m + j] + buf[(20 - i) * m + j];
        kronrod += detail::kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += detail::kGaussWeights[i / 2] * pair;
      }
      p.value[j] = h * kronrod;
      p.error[j] = std::abs(h * (kronrod - gauss));
      p.err = std::max(p.err, p.error[j]);
    }
    return p;
  };

  auto by_error = [](const Piece& x, const Piece& y) { return x.err < y.err; };
  std::vector<Piece> heap;
  const std::size_t pieces = std::max<std::size_t>(1, opt.initial_pieces);
  const double width = (b - a) / static_cast<double>(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == pieces) ? b : lo + width;
    heap.push_back(evaluate(lo, hi));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);
  // Recomputed from scratch periodically to avoid drift from add/subtract.
  auto summed_error = [&] {
    double s = 0.0;
    for (const auto& p : heap) s += p.err;
    return s;
  };
  double total_err = summed_error();
  std::size_t since_refresh = 0;
  while (total_err > opt.abs_tol) {
    if (heap.size() >= opt.max_intervals) {
      throw NumericalFailure("adaptive quadrature: interval budget exhausted",
                             "intervals=" + std::to_string(heap.size()) +
                                 " estimated_error=" + std::to_string(total_err) +
                                 " tolerance=" + std::to_string(opt.abs_tol));
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Piece worst = std::move(heap.back());
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalFailure("adaptive quadrature: interval underflow",
                             "at [" + std::to_string(worst.a) + ", " + std::to_string(worst.b) + "]");
    }
    Piece left = evaluate(worst.a, mid);
    Piece right = evaluate(mid, worst.b);
    total_err += left.err + right.err - worst.err;
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end(), by_error);
    if (++since_refresh == 64) {
      total_err = summed_error();
      since_refresh = 0;
    }
  }

  std::vector<QuadratureResult> out(m);
  // Left-to-right summation order, independent of heap layout.
  std::vector<Piece>& all = heap;
  std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0, c = 0.0, e = 0.0;
    for (const auto& p : all) {
      // Neumaier summation.
      const double v = p.value[j];
      const double t = s + v;
      c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
      s = t;
      e += p.error[j];
    }
    out[j] = {s + c, e, all.size()};
  }
  return out;
}

/// Scalar convenience wrapper around integrate_adaptive_family.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  auto fill = [&](double lo, double hi, std::span<double> values) {
    const auto u = detail::kronrod_abscissae(lo, hi);
    for (std::size_t i = 0; i < detail::kKronrodPoints; ++i) values[i] = f(u[i]);
  };
  if (a == b) return {};
  return integrate_adaptive_family(fill, a, b, 1, opt).front();
}

}  // namespace hyperunif

#endif  // HYPERUNIF_QUADRATURE_HPP_
