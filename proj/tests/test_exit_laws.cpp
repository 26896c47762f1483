#include <doctest.h>

#include <cmath>

#include "rpaths/errors.hpp"
#include "rpaths/exit_laws.hpp"
#include "rpaths/special_laws.hpp"

using namespace rpaths;

TEST_CASE("problem validation") {
  const Potential q = Potential::quartic_double_well();
  const ExitProblem good{q, -0.9, 0.9, -0.89, 0.1};
  CHECK_NOTHROW(good.validate());
  const ExitProblem flipped{q, 0.9, -0.9, 0.0, 0.1};
  CHECK_THROWS_AS(flipped.validate(), DomainError);
  const ExitProblem outside{q, -0.9, 0.9, -0.95, 0.1};
  CHECK_THROWS_AS(outside.validate(), DomainError);
  const ExitProblem cold{q, -0.9, 0.9, 0.0, -0.1};
  CHECK_THROWS_AS(cold.validate(), DomainError);
}

TEST_CASE("committor for a flat landscape is linear") {
  const Potential fl = Potential::flat(1.0);
  for (double x : {-0.5, 0.0, 0.7}) {
    const ExitProblem prob{fl, -1.0, 1.0, x, 0.3};
    CHECK(exit_probability(prob) ==
          doctest::Approx((x + 1.0) / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("committor against quadrature oracle") {
  const Potential p = Potential::quadratic_barrier(1.0);
  CHECK(exit_probability(ExitProblem{p, -0.9, 0.9, -0.89, 0.05}) ==
        doctest::Approx(5.931791273827465e-6).epsilon(1e-9));
  CHECK(exit_probability(ExitProblem{p, -0.9, 0.9, 0.0, 0.2}) ==
        doctest::Approx(0.5).epsilon(1e-10));
  const Potential q = Potential::quartic_double_well();
  CHECK(exit_probability(ExitProblem{q, -0.9, 0.9, -0.89, 0.2}) ==
        doctest::Approx(0.002584946706070352).epsilon(1e-9));
}

TEST_CASE("conditioned drift approaches |V'| away from the maximum") {
  const Potential q = Potential::quartic_double_well();
  const ExitProblem prob{q, -0.9, 0.9, -0.5, 1e-3};
  for (double x : {-0.6, 0.6})
    CHECK(h_drift(prob, x) ==
          doctest::Approx(std::fabs(q.deriv(x))).epsilon(0.03));
}

TEST_CASE("conditioned drift at the maximum follows the sqrt(eps) law") {
  const Potential q = Potential::quartic_double_well();
  const double eps = 1e-4;
  const ExitProblem prob{q, -0.9, 0.9, -0.5, eps};
  CHECK(h_drift(prob, 0.0) ==
        doctest::Approx(std::sqrt(8.0 * eps / M_PI)).epsilon(0.01));
}

TEST_CASE("solver at s = 0 returns the conditioning identity") {
  const Potential q = Potential::quartic_double_well();
  const auto ev = laplace_bvp(ExitProblem{q, -0.9, 0.9, -0.89, 0.1}, 0.0);
  CHECK(ev.value == doctest::Approx(1.0));
}

TEST_CASE("solver against the exact linear-barrier transform") {
  const Potential p = Potential::quadratic_barrier(1.0);
  const auto ev = laplace_bvp(ExitProblem{p, -0.9, 0.9, -0.89, 0.05}, 0.5);
  CHECK(ev.value == doctest::Approx(0.2238980077093).epsilon(1e-6));
  CHECK(ev.residual < 1e-6);
  CHECK(ev.s == 0.5);
}

TEST_CASE("solver against the drifted-path closed form") {
  const Potential p = Potential::abs_barrier(1.0);
  const double eps = 0.1, s = 1.0;
  const auto ev = laplace_bvp(ExitProblem{p, -0.9, -0.1, -0.5, eps}, s);
  const double r2 = std::sqrt(2.0 * eps);
  const double want =
      bm_drift_laplace(-0.9 / r2, -0.1 / r2, -0.5 / r2, -1.0 / r2, s);
  CHECK(ev.value == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("solver values decrease in s") {
  const Potential q = Potential::quartic_double_well();
  const ExitProblem prob{q, -0.9, 0.9, -0.89, 0.2};
  double prev = 1.0;
  for (double s : {0.25, 0.5, 1.0, 2.0}) {
    const double v = laplace_bvp(prob, s).value;
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("log-domain barrier integral matches direct quadrature") {
  const Potential q = Potential::quartic_double_well();
  const double eps = 0.5;
  // moderate temperature so the direct integral is representable
  const double direct = std::log(
      [&] {
        double acc = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
          const double t = -0.9 + 1.8 * (i + 0.5) / n;
          acc += std::exp(q.value(t) / eps) * (1.8 / n);
        }
        return acc;
      }());
  CHECK(log_integral_exp_v(q, -0.9, 0.9, eps, 0.0) ==
        doctest::Approx(direct).epsilon(1e-4));
}
