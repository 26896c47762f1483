#pragma once

#include <map>
#include <string>

#include "rpaths/potentials.hpp"

namespace rpaths {

enum class LimitLawKind {
  ShiftedGumbel,
  TildeG,
  Deterministic,
  Gaussian,
  FlatLaw,
  MonomialScaling,
};

std::string to_string(LimitLawKind k);

// Tagged asymptotic law. epsilon_power records the eps-divergence of the
// duration: 0 for the log-eps shifted families, -1 for the flat 1/eps rate,
// -n/(n+1) for monomials.
struct LimitLaw {
  LimitLawKind kind;
  double location = 0.0;
  double scale = 0.0;
  double epsilon_power = 0.0;
  std::map<std::string, double> params;

  double mean() const;
};

// Gumbel limit of the reactive duration for a double-well landscape:
// location (1/alpha)(-log eps + log(|x| B) + F(x) + F(B) - log alpha),
// scale 1/alpha.
LimitLaw double_well_limit_law(const Potential& p, double x, double B, double eps);

// Quadratic-barrier limit, case split on sign(x): shifted Gumbel (x < 0),
// tilde-G (x = 0), deterministic (log b - log x)/alpha (x > 0).
LimitLaw quadratic_barrier_limit_law(double alpha, double x, double b, double eps);

// Constant-drift limit: H -> delta/beta, fluctuations
// (H - delta/beta)/sqrt(eps) -> Normal(0, 2 delta/beta^3). params carry the
// variance coefficient and the full -delta -> +delta limit 2 delta/beta.
LimitLaw bm_drift_limit(double beta_slope, double delta, double eps);

// Flat landscape: mean 2b^2/(3 eps), variance 8b^4/(45 eps^2), rate 1/eps.
LimitLaw flat_limit(double b, double eps);

// Monomial landscape: only the scaling is known. epsilon_power = -n/(n+1),
// params carry the space scale a_eps = eps^{1/(2n+2)}.
LimitLaw monomial_limit(int n, double eps);

// Upper bound on the mean of the rescaled monomial duration: the explosion
// time of the zero-temperature rescaled process, integral of
// (p(inf) - p(y)) m(y) with m = exp(int f), p' = 1/m,
// f(z) = z^{2n+1} + 2 e^{V(z)} / int_{-inf}^z e^V. Truncation budget 1e-4.
double monomial_mean_bound(int n);

// Mean metastable transition time 2 pi / sqrt(V''(x*) |V''(0)|) *
// exp((V(0) - V(x*)) / eps).
double eyring_kramers_mean(const Potential& p, double eps);

}  // namespace rpaths
