#include "rpaths/limit_laws.hpp"

#include <cmath>
#include <vector>

#include "rpaths/errors.hpp"
#include "rpaths/quadrature.hpp"
#include "rpaths/stats.hpp"

namespace rpaths {

std::string to_string(LimitLawKind k) {
  switch (k) {
    case LimitLawKind::ShiftedGumbel: return "shifted_gumbel";
    case LimitLawKind::TildeG: return "tilde_g";
    case LimitLawKind::Deterministic: return "deterministic";
    case LimitLawKind::Gaussian: return "gaussian";
    case LimitLawKind::FlatLaw: return "flat";
    case LimitLawKind::MonomialScaling: return "monomial_scaling";
  }
  return "unknown";
}

double LimitLaw::mean() const {
  switch (kind) {
    case LimitLawKind::ShiftedGumbel:
      return location + scale * euler_gamma();
    case LimitLawKind::TildeG:
      // E of the tilde-G variable is (gamma + log 2)/2
      return location + scale * 0.5 * (euler_gamma() + std::log(2.0));
    case LimitLawKind::Deterministic:
    case LimitLawKind::Gaussian:
    case LimitLawKind::FlatLaw:
      return location;
    case LimitLawKind::MonomialScaling:
      throw DomainError("LimitLaw::mean: monomial limit has no known law");
  }
  throw DomainError("LimitLaw::mean: bad kind");
}

LimitLaw double_well_limit_law(const Potential& p, double x, double B, double eps) {
  const double alpha = curvature_alpha(p);
  const double xs = p.left_well().value_or(-1.0);
  const double ys = p.right_well().value_or(1.0);
  if (!(x > xs && x < 0)) throw DomainError("double_well_limit_law: x outside (x*, 0)");
  if (!(B > 0 && B < ys)) throw DomainError("double_well_limit_law: B outside (0, y*)");
  if (!(eps > 0)) throw DomainError("double_well_limit_law: eps must be > 0");
  LimitLaw law;
  law.kind = LimitLawKind::ShiftedGumbel;
  law.scale = 1.0 / alpha;
  law.location = (-std::log(eps) + std::log(std::abs(x) * B) +
                  correction_F(p, x) + correction_F(p, B) - std::log(alpha)) /
                 alpha;
  law.epsilon_power = 0.0;
  law.params["alpha"] = alpha;
  return law;
}

LimitLaw quadratic_barrier_limit_law(double alpha, double x, double b, double eps) {
  if (!(alpha > 0)) throw DomainError("quadratic_barrier_limit_law: alpha must be > 0");
  if (!(b > 0)) throw DomainError("quadratic_barrier_limit_law: b must be > 0");
  if (!(x > -b && x < b)) throw DomainError("quadratic_barrier_limit_law: x outside (-b, b)");
  if (!(eps > 0)) throw DomainError("quadratic_barrier_limit_law: eps must be > 0");
  LimitLaw law;
  law.epsilon_power = 0.0;
  law.params["alpha"] = alpha;
  if (x < 0) {
    law.kind = LimitLawKind::ShiftedGumbel;
    law.scale = 1.0 / alpha;
    law.location =
        (-std::log(eps) + std::log(std::abs(x) * b) - std::log(alpha)) / alpha;
  } else if (x == 0.0) {
    law.kind = LimitLawKind::TildeG;
    law.scale = 1.0 / alpha;
    law.location =
        (-0.5 * std::log(eps) + std::log(b) - 0.5 * std::log(alpha)) / alpha;
  } else {
    law.kind = LimitLawKind::Deterministic;
    law.scale = 0.0;
    law.location = (std::log(b) - std::log(x)) / alpha;
  }
  return law;
}

LimitLaw bm_drift_limit(double beta_slope, double delta, double eps) {
  if (!(beta_slope > 0 && delta > 0 && eps > 0))
    throw DomainError("bm_drift_limit: beta, delta, eps must be > 0");
  LimitLaw law;
  law.kind = LimitLawKind::Gaussian;
  law.location = delta / beta_slope;
  const double var_coeff = 2.0 * delta / std::pow(beta_slope, 3.0);
  law.scale = std::sqrt(var_coeff);
  law.epsilon_power = 0.0;
  law.params["variance_coefficient"] = var_coeff;
  law.params["reactive_limit"] = 2.0 * delta / beta_slope;
  return law;
}

LimitLaw flat_limit(double b, double eps) {
  if (!(b > 0 && eps > 0)) throw DomainError("flat_limit: b, eps must be > 0");
  LimitLaw law;
  law.kind = LimitLawKind::FlatLaw;
  law.location = 2.0 * b * b / (3.0 * eps);
  law.scale = std::sqrt(8.0 * std::pow(b, 4.0) / 45.0) / eps;
  law.epsilon_power = -1.0;
  law.params["mean_coefficient"] = 2.0 * b * b / 3.0;
  law.params["variance_coefficient"] = 8.0 * std::pow(b, 4.0) / 45.0;
  return law;
}

LimitLaw monomial_limit(int n, double eps) {
  if (n < 1) throw DomainError("monomial_limit: n must be >= 1");
  if (!(eps > 0)) throw DomainError("monomial_limit: eps must be > 0");
  LimitLaw law;
  law.kind = LimitLawKind::MonomialScaling;
  law.epsilon_power = -static_cast<double>(n) / (n + 1);
  law.location = 0.0;
  law.scale = 1.0;
  law.params["n"] = n;
  law.params["space_scale"] = std::pow(eps, 1.0 / (2 * n + 2));
  law.params["time_scale"] = std::pow(eps, law.epsilon_power);
  return law;
}

namespace {

// f(z) = z^{2n+1} + 2 e^{V(z)} / int_{-inf}^z e^V for the rescaled monomial
// landscape, evaluated via a shifted log-domain quadrature of the cumulative
// integral.
double monomial_f(const Potential& pot, int n, double z) {
  const double vz = pot.value(z);
  const double peak = std::min(z, 0.0);  // argmax of V on (-inf, z]
  const double vmax = pot.value(peak);
  // truncate below the peak where V - vmax < -45
  double T = 1.0;
  while (pot.value(peak - T) - vmax > -45.0) T *= 1.5;
  const double lo = peak - T;
  auto g = [&](double s) { return std::exp(pot.value(s) - vmax); };
  std::vector<double> pts = geometric_cluster(lo, z, z);
  if (z > 0)  // the integrand peaks at the interior maximum of V
    for (double q : geometric_cluster(lo, z, 0.0)) pts.push_back(q);
  double rough = gauss_kronrod_15(g, lo, z, nullptr);
  const double v =
      integrate_split(g, std::move(pts), std::max(rough, 1e-30) * 1e-10);
  if (!(v > 0)) throw QuadratureFailure("monomial_mean_bound: mass integral collapsed");
  const double log_tail_ratio = vz - vmax - std::log(v);
  (void)n;
  return -pot.deriv(z) + 2.0 * std::exp(log_tail_ratio);
}

}  // namespace

double monomial_mean_bound(int n) {
  if (n < 1) throw DomainError("monomial_mean_bound: n must be >= 1");
  const Potential pot = Potential::monomial(n);
  auto f = [&](double z) { return monomial_f(pot, n, z); };

  // g(y) = m(y) (p(inf) - p(y)) solves g' = f g - 1 with g ~ 1/f at both
  // ends. The growing homogeneous mode m(y) makes forward integration
  // unstable, so integrate downward from y_hi where g = 1/f holds to high
  // accuracy.
  const double y_hi = 9.0;
  const double y_lo = -8.0;
  const double h = 1.0 / 256.0;
  const long steps = std::lround((y_hi - y_lo) / h);

  auto rhs = [&](double y, double g) { return f(y) * g - 1.0; };
  double y = y_hi;
  double g = 1.0 / f(y_hi);
  std::vector<double> trace;  // g at y_hi, y_hi - h, ...
  trace.reserve(steps + 1);
  trace.push_back(g);
  for (long i = 0; i < steps; ++i) {
    // RK4, step -h
    const double k1 = rhs(y, g);
    const double k2 = rhs(y - 0.5 * h, g - 0.5 * h * k1);
    const double k3 = rhs(y - 0.5 * h, g - 0.5 * h * k2);
    const double k4 = rhs(y - h, g - h * k3);
    g -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    y -= h;
    if (!(g > 0) || !std::isfinite(g))
      throw QuadratureFailure("monomial_mean_bound: ODE integration degenerate");
    trace.push_back(g);
  }

  // Simpson over [y_lo, 8]; the trace runs downward so index 256 is y = 8.
  const long i8 = std::lround((y_hi - 8.0) / h);
  double core = 0.0;
  for (long i = i8; i + 2 <= steps; i += 2)
    core += h / 3.0 * (trace[i] + 4.0 * trace[i + 1] + trace[i + 2]);

  // closed tails: g ~ 1/|y|^{2n+1} beyond |y| = 8 on either side
  const double tail = 2.0 / (2.0 * n * std::pow(8.0, 2.0 * n));
  return core + tail;
}

double eyring_kramers_mean(const Potential& p, double eps) {
  if (!(eps > 0)) throw DomainError("eyring_kramers_mean: eps must be > 0");
  curvature_alpha(p);  // rejects landscapes without a non-degenerate maximum
  const auto xw = p.left_well();
  if (!xw) throw DegenerateMaximum("eyring_kramers_mean: no left well");
  const double xs = *xw;
  const double c1 = p.deriv2(xs);
  const double c2 = std::abs(p.deriv2(0.0));
  if (!(c1 > 0)) throw DegenerateMaximum("eyring_kramers_mean: flat well");
  return 2.0 * M_PI / std::sqrt(c1 * c2) *
         std::exp((p.value(0.0) - p.value(xs)) / eps);
}

}  // namespace rpaths
