#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hyperunif/error.hpp"
#include "hyperunif/kernel.hpp"
#include "hyperunif/projected.hpp"
#include "hyperunif/statistic.hpp"

using namespace hyperunif;

TEST_SUITE("kernel") {
  TEST_CASE("endpoint values in every dimension") {
    for (int q = 1; q <= 10; ++q) {
      const KernelEvaluator k(q);
      CHECK(k.psi(0.0) == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(k.psi(M_PI) == doctest::Approx(0.25).epsilon(1e-12));
    }
  }

  TEST_CASE("q = 1 is the Watson kernel shifted by 1/3") {
    const KernelEvaluator k(1);
    for (int i = 0; i <= 1000; ++i) {
      const double theta = M_PI * i / 1000.0;
      CHECK(std::abs(k.psi(theta) - 2.0 * watson_h(theta) - 1.0 / 3.0) < 1e-14);
    }
  }

  TEST_CASE("closed forms for q = 2 and 3") {
    const KernelEvaluator k2(2), k3(3);
    for (double theta : {0.2, 1.0, 2.5}) {
      CHECK(k2.psi(theta) == doctest::Approx(0.5 - 0.25 * std::sin(theta / 2)).epsilon(1e-15));
    }
    // (pi - theta) tan(theta/2) tends to 2 at theta = pi.
    CHECK(k3.psi(M_PI - 1e-12) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(k3.psi(M_PI - 1e-6) == doctest::Approx(k3.psi(M_PI - 2e-6)).epsilon(1e-6));
  }

  TEST_CASE("kernel is decreasing in the angle") {
    for (int q : {1, 2, 3, 4, 6}) {
      const KernelEvaluator k(q);
      double prev = k.psi(0.0);
      for (int i = 1; i <= 40; ++i) {
        const double v = k.psi(M_PI * i / 40.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
      }
    }
  }

  TEST_CASE("kernel agrees with a Monte Carlo evaluation of its definition") {
    // psi_q(theta) = E_gamma[1 - max(F_q(x'gamma), F_q(y'gamma))] for unit x, y
    // at angle theta and gamma uniform on the sphere.
    const double theta = 1.1;
    for (int q : {3, 7}) {
      const ProjectedUniform F(q);
      const auto g = sample_uniform(q, 200000, RngStream{2024, static_cast<std::uint64_t>(q)});
      double sum = 0.0;
      double sum2 = 0.0;
      for (std::size_t i = 0; i < g.n(); ++i) {
        const auto v = g.point(i);
        const double a = F.cdf(v[0]);
        const double b = F.cdf(std::cos(theta) * v[0] + std::sin(theta) * v[1]);
        const double z = 1.0 - std::max(a, b);
        sum += z;
        sum2 += z * z;
      }
      const double m = sum / g.n();
      const double se = std::sqrt((sum2 / g.n() - m * m) / g.n());
      const KernelEvaluator k(q);
      CAPTURE(q);
      CHECK(std::abs(k.psi(theta) - m) < 4.0 * se);
    }
  }

  TEST_CASE("interpolation table reproduces direct evaluation") {
    KernelEvaluator k(5);
    k.build_table();
    REQUIRE(k.has_table());
    for (double theta : {0.0, 1e-3, 0.37, 1.9, 3.0, M_PI}) {
      CHECK(k.psi_interpolated(theta) == doctest::Approx(k.psi(theta)).epsilon(1e-9));
    }
    KernelEvaluator low(2);
    low.build_table();
    CHECK_FALSE(low.has_table());
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(KernelEvaluator(0), DomainError);
    CHECK_THROWS_AS(KernelEvaluator(3, -1.0), DomainError);
    CHECK_THROWS_AS(KernelEvaluator(2).psi(4.0), DomainError);
  }
}
