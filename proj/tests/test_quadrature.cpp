#include <doctest.h>

#include <cmath>

#include "rpaths/errors.hpp"
#include "rpaths/quadrature.hpp"

using namespace rpaths;

TEST_CASE("gauss_kronrod_15 integrates smooth polynomials exactly") {
  double err = 0.0;
  const double got =
      gauss_kronrod_15([](double t) { return t * t * t * t; }, 0.0, 1.0, &err);
  CHECK(got == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(err < 1e-14);
}

TEST_CASE("integrate hits the Gaussian integral") {
  const double got =
      integrate([](double t) { return std::exp(-t * t); }, -8.0, 8.0, 1e-12);
  CHECK(got == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("integrate_split handles a kink at a breakpoint") {
  const double got = integrate_split([](double t) { return std::fabs(t); },
                                     {-1.0, 0.0, 2.0}, 1e-12);
  CHECK(got == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("integrate throws when the interval budget is too small") {
  CHECK_THROWS_AS(integrate([](double t) { return std::sin(1.0 / t); }, 1e-9,
                            1.0, 1e-15, 8),
                  QuadratureFailure);
}

TEST_CASE("geometric_cluster stays inside the interval and reaches the floor") {
  const auto pts = geometric_cluster(0.0, 1.0, 0.0, 20);
  REQUIRE(pts.size() > 2);
  bool has_fine = false;
  for (double p : pts) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    if (p > 0.0 && p < 0x1.0p-19) has_fine = true;
  }
  CHECK(has_fine);
}
