#pragma once

#include "rpaths/rng.hpp"

namespace rpaths {

// Euler Gamma function for z > 0 (Lanczos approximation, relative error
// below 1e-12 on the tested range).
double gamma_fn(double z);
double log_gamma_fn(double z);

struct GumbelLaw {
  double location = 0.0;
  double scale = 1.0;

  double density(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;
  double sample(RngStream& rng) const;
  double mean() const;
  double variance() const;
  // E e^{-sG} = Gamma(1+s) for the standardized variable, s > -1.
  static double standard_laplace(double s);
};

struct TildeGLaw {
  // E e^{-s G~} = 2^{s/2}/sqrt(pi) Gamma((1+s)/2), s > -1.
  static double laplace(double s);
};

struct InverseGaussianLaw {
  double m;  // mean > 0
  double l;  // shape > 0
  double density(double x) const;
  double laplace(double s) const;
};

// D_{-nu}(x) = e^{-x^2/4}/Gamma(nu) int_0^inf t^{nu-1} e^{-t^2/2 - x t} dt.
double parabolic_cylinder_D(double nu, double x);

// phi_nu(x) = e^{-x^2/4} D_{-nu}(x), evaluated in log domain so that large
// |x| stays finite: returns log phi_nu(x).
double log_phi_nu(double nu, double x);
double phi_nu(double nu, double x);

// Exact conditional Laplace transform of the repulsive OU exit time
// (alpha = 1): v_s(x/sqrt(eps)) / v_0(x/sqrt(eps)) built from phi_nu.
double ou_laplace_exact(double b, double x, double eps, double s);

// Small-eps closed form of the same transform, general alpha by time/space
// rescaling; case selected by sign(x).
double ou_laplace_asymptotic(double b, double x, double eps, double s,
                             double alpha);

// Conditioned exit-time transform of a unit Brownian motion with drift mu on
// (a, b), given exit at b. Passing x == a returns the x -> a limit.
double bm_drift_laplace(double a, double b, double x, double mu, double s);

// Flat-potential conditioned exit law on (-b, b) at temperature eps.
double flat_laplace(double b, double eps, double s);
struct FlatMoments {
  double mean;
  double variance;
};
FlatMoments flat_moments(double b, double eps);

// Standardized flat-potential fluctuation law Y: E e^{-sY} =
// sqrt(As)/sinh(sqrt(As)) e^{Bs}, A = 6 sqrt5/sqrt2, B = sqrt5/sqrt2.
double flat_standardized_laplace(double s);

}  // namespace rpaths
