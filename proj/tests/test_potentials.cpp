#include <doctest.h>

#include <cmath>

#include "rpaths/errors.hpp"
#include "rpaths/potentials.hpp"

using namespace rpaths;

TEST_CASE("tag parsing round-trips") {
  for (const char* tag :
       {"quartic", "quadratic:1", "abs:2", "flat:1", "monomial:1"}) {
    const Potential p = Potential::parse(tag);
    CHECK(Potential::parse(p.tag()).tag() == p.tag());
  }
  CHECK_THROWS_AS(Potential::parse("cubic"), DomainError);
  CHECK_THROWS_AS(Potential::parse("quadratic:-1"), DomainError);
}

TEST_CASE("double well values and stationary points") {
  const Potential q = Potential::quartic_double_well();
  CHECK(q.value(1.0) == doctest::Approx(-0.25));
  CHECK(q.value(0.0) == 0.0);
  CHECK(q.deriv(0.5) == doctest::Approx(0.5 * 0.5 * 0.5 - 0.5));
  CHECK(q.deriv2(0.0) == doctest::Approx(-1.0));
  CHECK(q.left_well().value() == doctest::Approx(-1.0));
  CHECK(q.right_well().value() == doctest::Approx(1.0));
  CHECK(curvature_alpha(q) == doctest::Approx(1.0));
}

TEST_CASE("quadratic barrier has no wells and pure curvature") {
  const Potential p = Potential::quadratic_barrier(2.0);
  CHECK(p.value(1.0) == doctest::Approx(-1.0));
  CHECK_FALSE(p.left_well().has_value());
  CHECK(curvature_alpha(p) == doctest::Approx(2.0));
}

TEST_CASE("degenerate maxima are rejected by curvature_alpha") {
  CHECK_THROWS_AS(curvature_alpha(Potential::monomial(1)), DegenerateMaximum);
  CHECK_THROWS_AS(curvature_alpha(Potential::flat(1.0)), DegenerateMaximum);
}

TEST_CASE("correction term matches the quartic closed form") {
  const Potential q = Potential::quartic_double_well();
  for (double s : {-0.95, -0.5, -0.1, 0.3, 0.9}) {
    const double want = -0.5 * std::log(1.0 - s * s);
    CHECK(correction_F(q, s) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("correction term vanishes identically for a pure quadratic") {
  const Potential p = Potential::quadratic_barrier(1.5);
  for (double s : {-0.8, -0.2, 0.4})
    CHECK(std::fabs(correction_F(p, s)) < 1e-10);
}

TEST_CASE("noiseless travel time for the linear drift is logarithmic") {
  const Potential p = Potential::quadratic_barrier(2.0);
  // dx/dt = 2x away from the origin: t = log(to/from)/2
  CHECK(deterministic_time(p, 0.1, 0.8) ==
        doctest::Approx(std::log(8.0) / 2.0).epsilon(1e-8));
}

TEST_CASE("Taylor sandwich bounds hold near the maximum") {
  const Potential q = Potential::quartic_double_well();
  const double K = q.taylor_K();
  const double delta = q.taylor_delta();
  REQUIRE(K > 0);
  REQUIRE(delta > 0);
  for (int i = -20; i <= 20; ++i) {
    const double x = delta * i / 20.5;
    CHECK(std::fabs(q.deriv(x) + curvature_alpha(q) * x) <= K * x * x + 1e-15);
  }
}

TEST_CASE("leading-order exponential integral approximations") {
  // quadratic peak: int e^{-t^2/(2 eps)} over a half line
  const double eps = 1e-4;
  const double quad = laplace_asymptotic(LaplaceKind::QuadraticInteriorMax, 0.0,
                                         -1.0, 1.0, eps);
  CHECK(quad == doctest::Approx(std::sqrt(M_PI * eps / 2.0)).epsilon(1e-12));
  // linear decay: int_0^inf e^{-3t/eps}
  const double lin = laplace_asymptotic(LaplaceKind::LinearBoundaryDecay, 0.0,
                                        -3.0, 1.0, eps);
  CHECK(lin == doctest::Approx(eps / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      laplace_asymptotic(LaplaceKind::QuadraticInteriorMax, 0.0, 1.0, 1.0, eps),
      SignError);
}
