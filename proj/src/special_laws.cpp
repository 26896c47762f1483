#include "rpaths/special_laws.hpp"

#include <cmath>

#include "rpaths/errors.hpp"
#include "rpaths/quadrature.hpp"
#include "rpaths/stats.hpp"

namespace rpaths {

namespace {

// Lanczos, g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double z) {
  // valid for z > 0.5; callers shift below
  const double g = 7.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z - 1.0 + i);
  const double t = z - 0.5 + g;
  return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t + std::log(a);
}

double log_sinh(double z) {
  // z > 0
  if (z < 20.0) return std::log(std::sinh(z));
  return z - std::log(2.0) + std::log1p(-std::exp(-2.0 * z));
}

}  // namespace

double log_gamma_fn(double z) {
  if (z <= 0) throw DomainError("gamma_fn: z must be > 0");
  if (z < 0.5)  // Gamma(z) = Gamma(z+1)/z
    return log_gamma_fn(z + 1.0) - std::log(z);
  return lanczos_log_gamma(z);
}

double gamma_fn(double z) { return std::exp(log_gamma_fn(z)); }

double GumbelLaw::density(double x) const {
  if (scale <= 0) throw DomainError("Gumbel: scale must be > 0");
  const double u = (x - location) / scale;
  return std::exp(-u - std::exp(-u)) / scale;
}

double GumbelLaw::cdf(double x) const {
  if (scale <= 0) throw DomainError("Gumbel: scale must be > 0");
  const double u = (x - location) / scale;
  return std::exp(-std::exp(-u));
}

double GumbelLaw::quantile(double p) const {
  if (scale <= 0) throw DomainError("Gumbel: scale must be > 0");
  if (!(p > 0 && p < 1)) throw DomainError("Gumbel quantile: p outside (0,1)");
  return location - scale * std::log(-std::log(p));
}

double GumbelLaw::sample(RngStream& rng) const {
  return quantile(rng.uniform());
}

double GumbelLaw::mean() const { return location + scale * euler_gamma(); }

double GumbelLaw::variance() const {
  return scale * scale * M_PI * M_PI / 6.0;
}

double GumbelLaw::standard_laplace(double s) {
  if (s <= -1) throw DomainError("Gumbel Laplace transform diverges for s <= -1");
  return gamma_fn(1.0 + s);
}

double TildeGLaw::laplace(double s) {
  if (s <= -1) throw DomainError("tilde-G Laplace transform diverges for s <= -1");
  return std::pow(2.0, 0.5 * s) / std::sqrt(M_PI) * gamma_fn(0.5 * (1.0 + s));
}

double InverseGaussianLaw::density(double x) const {
  if (x <= 0) return 0.0;
  return std::sqrt(l / (2.0 * M_PI)) * std::pow(x, -1.5) *
         std::exp(-l * (x - m) * (x - m) / (2.0 * m * m * x));
}

double InverseGaussianLaw::laplace(double s) const {
  return std::exp(l / m * (1.0 - std::sqrt(1.0 + 2.0 * m * m * s / l)));
}

namespace {

// log of int_0^inf t^{nu-1} e^{-t^2/2 - x t} dt, computed against the peak
// value of the exponent so that strongly negative x stays in range.
double log_cylinder_integral(double nu, double x) {
  const double tpeak = x < 0 ? -x : 0.0;
  const double E = 0.5 * tpeak * tpeak + x * tpeak;  // = -max exponent
  auto g = [&](double t) { return -0.5 * t * t - x * t + E; };

  // head (0, 1]: substitute u = t^nu to absorb the t^{nu-1} factor
  auto head = [&](double u) {
    const double t = std::pow(u, 1.0 / nu);
    return std::exp(g(t)) / nu;
  };
  // tail cutoff: poly * exp term below ~1e-22 of the peak
  double T = std::max(1.0, tpeak) + 12.0;
  while ((nu - 1.0) * std::log(T) + g(T) > -55.0) T *= 1.5;
  auto tail = [&](double t) {
    return std::pow(t, nu - 1.0) * std::exp(g(t));
  };

  double rough = gauss_kronrod_15(head, 0.0, 1.0, nullptr) +
                 gauss_kronrod_15(tail, 1.0, T, nullptr);
  const double tol = std::max(std::abs(rough), 1e-30) * 1e-12;
  double v = integrate(head, 0.0, 1.0, tol) +
             integrate_split(tail, geometric_cluster(1.0, T, std::max(1.0, tpeak)),
                             tol);
  if (!(v > 0)) throw QuadratureFailure("parabolic cylinder integral collapsed");
  return std::log(v) - E;
}

}  // namespace

double parabolic_cylinder_D(double nu, double x) {
  if (nu <= 0) throw DomainError("parabolic_cylinder_D: nu must be > 0");
  return std::exp(-0.25 * x * x + log_cylinder_integral(nu, x) -
                  log_gamma_fn(nu));
}

double log_phi_nu(double nu, double x) {
  if (nu <= 0) throw DomainError("phi_nu: nu must be > 0");
  return -0.5 * x * x + log_cylinder_integral(nu, x) - log_gamma_fn(nu);
}

double phi_nu(double nu, double x) { return std::exp(log_phi_nu(nu, x)); }

namespace {

// log of phi_nu(-be) phi_nu(-y) - phi_nu(be) phi_nu(y), all arguments in
// (-be, be); the second product is exponentially smaller.
double log_vs_numerator(double nu, double be, double y) {
  const double big = log_phi_nu(nu, -be) + log_phi_nu(nu, -y);
  const double small = log_phi_nu(nu, be) + log_phi_nu(nu, y);
  const double r = small - big;
  if (r > -1e-9)
    throw PrecisionLoss("ou_laplace_exact: cancellation at the boundary");
  return big + std::log1p(-std::exp(r));
}

}  // namespace

double ou_laplace_exact(double b, double x, double eps, double s) {
  if (!(b > 0) || eps <= 0) throw DomainError("ou_laplace_exact: b, eps > 0");
  if (!(x > -b && x < b)) throw DomainError("ou_laplace_exact: x outside (-b,b)");
  if (s <= -1) throw DomainError("ou_laplace_exact: s must be > -1");
  if (s == 0.0) return 1.0;
  const double be = b / std::sqrt(eps);
  const double y = x / std::sqrt(eps);
  const double nu = s + 1.0;
  // v_s(y)/v_0(y): shared denominators phi(-be)^2 - phi(be)^2 handled the
  // same way as the numerators.
  const double num_s = log_vs_numerator(nu, be, y);
  const double den_s = log_vs_numerator(nu, be, be);  // = phi^2 difference
  const double num_0 = log_vs_numerator(1.0, be, y);
  const double den_0 = log_vs_numerator(1.0, be, be);
  return std::exp(num_s - den_s - num_0 + den_0);
}

double ou_laplace_asymptotic(double b, double x, double eps, double s,
                             double alpha) {
  if (!(b > 0) || eps <= 0 || alpha <= 0)
    throw DomainError("ou_laplace_asymptotic: b, eps, alpha > 0");
  if (!(x > -b && x < b))
    throw DomainError("ou_laplace_asymptotic: x outside (-b,b)");
  if (s <= -alpha)
    throw DomainError("ou_laplace_asymptotic: rescaled s must be > -1");
  const double sr = s / alpha;
  const double xr = x * std::sqrt(alpha);
  const double br = b * std::sqrt(alpha);
  if (x < 0)
    return gamma_fn(1.0 + sr) * std::pow(eps / (std::abs(xr) * br), sr);
  if (x == 0)
    return TildeGLaw::laplace(sr) * std::pow(std::sqrt(eps) / br, sr);
  return std::pow(xr / br, sr);
}

double bm_drift_laplace(double a, double b, double x, double mu, double s) {
  if (!(a <= x && x < b)) throw DomainError("bm_drift_laplace: need a <= x < b");
  if (s < 0) throw DomainError("bm_drift_laplace: s must be >= 0");
  if (s == 0.0) return 1.0;
  const double am = std::abs(mu);
  const double q = std::sqrt(2.0 * s + mu * mu);
  const double L = b - a;
  if (x == a) {
    // Limit form: sinh(L|mu|)/|mu| * q/sinh(Lq); |mu| -> 0 handled by the
    // sinh(z)/z limit.
    const double lead = am < 1e-12 ? std::log(L) : log_sinh(L * am) - std::log(am);
    return std::exp(lead + std::log(q) - log_sinh(L * q));
  }
  const double d = x - a;
  const double drift_ratio =
      am < 1e-12 ? std::log(L / d) : log_sinh(L * am) - log_sinh(d * am);
  return std::exp(drift_ratio + log_sinh(d * q) - log_sinh(L * q));
}

double flat_laplace(double b, double eps, double s) {
  if (!(b > 0) || eps <= 0) throw DomainError("flat_laplace: b, eps > 0");
  if (s < 0) throw DomainError("flat_laplace: s must be >= 0");
  if (s == 0.0) return 1.0;
  const double z = std::sqrt(4.0 * b * b * s / eps);
  return std::exp(std::log(z) - log_sinh(z));
}

FlatMoments flat_moments(double b, double eps) {
  if (!(b > 0) || eps <= 0) throw DomainError("flat_moments: b, eps > 0");
  return {2.0 * b * b / (3.0 * eps), 8.0 * std::pow(b, 4.0) / (45.0 * eps * eps)};
}

double flat_standardized_laplace(double s) {
  const double A = 6.0 * std::sqrt(5.0) / std::sqrt(2.0);
  const double B = std::sqrt(5.0) / std::sqrt(2.0);
  if (s == 0.0) return 1.0;
  if (s < 0) throw DomainError("flat_standardized_laplace: s must be >= 0");
  const double z = std::sqrt(A * s);
  return std::exp(std::log(z) - log_sinh(z) + B * s);
}

}  // namespace rpaths
