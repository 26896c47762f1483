#include <doctest.h>

#include <cmath>

#include "rpaths/errors.hpp"
#include "rpaths/rng.hpp"
#include "rpaths/special_laws.hpp"
#include "rpaths/stats.hpp"

using namespace rpaths;

TEST_CASE("gamma function reference values") {
  CHECK(gamma_fn(0.5) == doctest::Approx(1.772453850905516).epsilon(1e-12));
  CHECK(gamma_fn(0.75) == doctest::Approx(1.2254167024651776).epsilon(1e-12));
  CHECK(gamma_fn(2.3) == doctest::Approx(1.1667119051981602).epsilon(1e-12));
  CHECK(gamma_fn(7.5) == doctest::Approx(1871.2543057977883).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(log_gamma_fn(7.5) ==
        doctest::Approx(std::log(1871.2543057977883)).epsilon(1e-12));
}

TEST_CASE("extreme-value law: density, cdf, quantile, transform") {
  GumbelLaw g;
  CHECK(g.cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(g.density(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(g.quantile(g.cdf(1.3)) == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(g.mean() == doctest::Approx(euler_gamma()).epsilon(1e-12));
  CHECK(g.variance() == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
  CHECK(GumbelLaw::standard_laplace(0.7) ==
        doctest::Approx(0.90863873285329044).epsilon(1e-12));

  const GumbelLaw shifted{2.0, 0.5};
  RngStream rng(13);
  double acc = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) acc += shifted.sample(rng);
  CHECK(acc / n == doctest::Approx(shifted.mean()).epsilon(0.01));
}

TEST_CASE("symmetrized half-law transform reference values") {
  CHECK(TildeGLaw::laplace(0.5) ==
        doctest::Approx(0.82217895866245852).epsilon(1e-12));
  CHECK(TildeGLaw::laplace(1.0) ==
        doctest::Approx(0.79788456080286541).epsilon(1e-12));
  CHECK(TildeGLaw::laplace(3.0) ==
        doctest::Approx(1.5957691216057308).epsilon(1e-12));
}

TEST_CASE("parabolic cylinder function against reference values") {
  CHECK(parabolic_cylinder_D(0.5, 1.2) ==
        doctest::Approx(0.55345634398519917).epsilon(1e-10));
  CHECK(parabolic_cylinder_D(1.0, -0.7) ==
        doctest::Approx(2.1477367020140392).epsilon(1e-10));
  CHECK(parabolic_cylinder_D(2.5, 0.3) ==
        doctest::Approx(0.52565798656804411).epsilon(1e-10));
  CHECK(parabolic_cylinder_D(1.5, 3.0) ==
        doctest::Approx(0.017224293634324899).epsilon(1e-10));
  CHECK(phi_nu(1.0, 0.4) ==
        doctest::Approx(std::exp(log_phi_nu(1.0, 0.4))).epsilon(1e-12));
}

TEST_CASE("exact linear-barrier transform against shooting oracle") {
  CHECK(ou_laplace_exact(0.9, -0.89, 0.05, 0.5) ==
        doctest::Approx(0.2238980077093).epsilon(1e-8));
  CHECK(ou_laplace_exact(0.9, 0.0, 0.2, 1.0) ==
        doctest::Approx(0.3932627963095).epsilon(1e-8));
  CHECK(ou_laplace_exact(0.9, 0.5, 0.05, 2.0) ==
        doctest::Approx(0.3531392410349).epsilon(1e-8));
  CHECK(ou_laplace_exact(0.9, -0.89, 0.2, 1.0) ==
        doctest::Approx(0.2341162315550).epsilon(1e-8));
  CHECK(ou_laplace_exact(0.9, -0.89, 0.05, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("small-temperature transform limits by start position") {
  // x < 0: Gamma(1+s) times the temperature power
  const double eps = 1e-6, b = 0.9, x = -0.89, s = 0.5;
  const double want =
      gamma_fn(1.5) * std::pow(eps / (0.89 * 0.9), 0.5);
  CHECK(ou_laplace_asymptotic(b, x, eps, s, 1.0) ==
        doctest::Approx(want).epsilon(1e-12));
  // x > 0: pure power (deterministic limit)
  CHECK(ou_laplace_asymptotic(b, 0.5, eps, s, 1.0) ==
        doctest::Approx(std::pow(0.5 / 0.9, 0.5)).epsilon(1e-12));
  // x = 0: half-law transform times the sqrt(eps) power
  CHECK(ou_laplace_asymptotic(b, 0.0, eps, s, 1.0) ==
        doctest::Approx(TildeGLaw::laplace(0.5) *
                        std::pow(std::sqrt(eps) / 0.9, 0.5))
            .epsilon(1e-12));
}

TEST_CASE("drifted-path transform against shooting oracle") {
  CHECK(bm_drift_laplace(-2.0, 1.0, -0.5, -1.3, 0.7) ==
        doctest::Approx(0.510771955285).epsilon(1e-9));
  CHECK(bm_drift_laplace(-1.0, 1.0, 0.0, 0.5, 1.0) ==
        doctest::Approx(0.479349326707).epsilon(1e-9));
  CHECK(bm_drift_laplace(-1.0, 1.0, 0.0, 0.5, 0.0) == 1.0);
  // the x -> a limit stays finite and continuous
  const double lim = bm_drift_laplace(-1.0, 1.0, -1.0, 0.5, 1.0);
  const double near = bm_drift_laplace(-1.0, 1.0, -1.0 + 1e-9, 0.5, 1.0);
  CHECK(lim == doctest::Approx(near).epsilon(1e-6));
  CHECK_THROWS_AS(bm_drift_laplace(-1.0, 1.0, 1.5, 0.5, 1.0), DomainError);
}

TEST_CASE("flat-landscape transform and moments") {
  CHECK(flat_laplace(1.0, 0.5, 1.0) ==
        doctest::Approx(0.33552474570960774).epsilon(1e-12));
  CHECK(flat_laplace(0.7, 0.2, 0.5) ==
        doctest::Approx(0.48977479485629564).epsilon(1e-12));
  const FlatMoments fm = flat_moments(1.0, 0.5);
  CHECK(fm.mean == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(fm.variance == doctest::Approx(8.0 / 45.0 / 0.25).epsilon(1e-12));
  // moments agree with numerical derivatives of the transform
  const double h = 1e-5;
  const double d1 =
      (flat_laplace(1.0, 0.5, h) - flat_laplace(1.0, 0.5, 0.0)) / h;
  CHECK(-d1 == doctest::Approx(fm.mean).epsilon(1e-4));
}

TEST_CASE("standardized flat fluctuation transform is centered") {
  CHECK(flat_standardized_laplace(0.0) == doctest::Approx(1.0));
  const double h = 1e-6;
  const double d1 =
      (flat_standardized_laplace(h) - flat_standardized_laplace(0.0)) / h;
  CHECK(std::fabs(d1) < 1e-4);  // zero mean
}

TEST_CASE("first-passage law density and transform") {
  const InverseGaussianLaw ig{1.5, 2.0};
  CHECK(ig.density(1.1) == doctest::Approx(0.4584167027060236).epsilon(1e-12));
  CHECK(ig.laplace(0.8) ==
        doctest::Approx(0.40748136771003054).epsilon(1e-12));
  CHECK(ig.laplace(0.0) == doctest::Approx(1.0));
}
