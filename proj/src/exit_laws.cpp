#include "rpaths/exit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rpaths/errors.hpp"
#include "rpaths/quadrature.hpp"

namespace rpaths {

void ExitProblem::validate() const {
  if (!(a < x && x < b)) throw DomainError("ExitProblem: need a < x < b");
  if (!(epsilon > 0)) throw DomainError("ExitProblem: epsilon must be > 0");
  if (potential.nondegenerate_maximum()) {
    const double xs = potential.left_well().value_or(
        -std::numeric_limits<double>::infinity());
    const double ys = potential.right_well().value_or(
        std::numeric_limits<double>::infinity());
    if (!(xs < a && a < 0 && 0 < b && b < ys))
      throw DomainError("ExitProblem: need x* < a < 0 < b < y*");
  }
}

namespace {

double interval_max_v(const Potential& p, double lo, double hi) {
  double m = std::max(p.value(lo), p.value(hi));
  if (lo < 0 && hi > 0) m = std::max(m, p.value(0.0));
  return m;
}

}  // namespace

double log_integral_exp_v(const Potential& p, double lo, double hi, double eps,
                          double shift) {
  if (!(hi > lo)) throw DomainError("log_integral_exp_v: need hi > lo");
  auto f = [&](double s) { return std::exp((p.value(s) - shift) / eps); };
  // The integrand peaks at an endpoint or at the interior maximum 0; cluster
  // breakpoints at all three so the adaptive pass finds narrow peaks.
  std::vector<double> pts = geometric_cluster(lo, hi, lo);
  for (double q : geometric_cluster(lo, hi, hi)) pts.push_back(q);
  if (lo < 0 && hi > 0)
    for (double q : geometric_cluster(lo, hi, 0.0)) pts.push_back(q);
  double rough = 0.0;
  {
    std::vector<double> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      rough += gauss_kronrod_15(f, sorted[i], sorted[i + 1], nullptr);
  }
  const double tol = std::max(rough, 1e-280) * 1e-11;
  const double v = integrate_split(f, pts, tol);
  if (!(v > 0)) throw QuadratureFailure("log_integral_exp_v: integral collapsed");
  return std::log(v);
}

double exit_probability(const ExitProblem& prob) {
  prob.validate();
  const Potential& p = prob.potential;
  const double M = interval_max_v(p, prob.a, prob.b);
  const double num = log_integral_exp_v(p, prob.a, prob.x, prob.epsilon, M);
  const double den = log_integral_exp_v(p, prob.a, prob.b, prob.epsilon, M);
  return std::exp(num - den);
}

double h_drift(const ExitProblem& prob, double at) {
  prob.validate();
  if (!(at > prob.a && at < prob.b))
    throw DomainError("h_drift: position outside (a, b)");
  const Potential& p = prob.potential;
  const double eps = prob.epsilon;
  const double M = interval_max_v(p, prob.a, prob.b);
  const double logI = log_integral_exp_v(p, prob.a, at, eps, M);
  return -p.deriv(at) +
         2.0 * eps * std::exp((p.value(at) - M) / eps - logI);
}

namespace {

// Uniform grid on [a, b] with x inserted. Local refinement near the
// endpoints was tried and rejected: cells whose width jumps between
// refinement levels leave an h-independent truncation residue, so the layer
// resolution comes from the doubling loop instead.
std::vector<double> bvp_grid(double a, double b, double x, int n_uniform) {
  std::vector<double> g;
  g.reserve(n_uniform + 1);
  const double h = (b - a) / (n_uniform - 1);
  for (int i = 0; i < n_uniform; ++i) g.push_back(a + i * h);
  g.push_back(x);
  std::sort(g.begin(), g.end());
  const double min_sep = (b - a) * 1e-14;
  std::vector<double> out;
  out.reserve(g.size());
  out.push_back(g.front());
  for (double v : g)
    if (v - out.back() > min_sep) out.push_back(v);
  if (out.back() != b) out.back() = b;
  return out;
}

// Solves the fitted-volume tridiagonal system and returns u at every node.
// Scheme: eps e^{V/eps} (e^{-V/eps} u')' = s u; the two-point flux across a
// cell uses the exact cell factor int e^{(V-M)/eps}, which keeps the scheme
// monotone for eps << |V'| h.
std::vector<double> solve_on_grid(const Potential& p, double eps, double s,
                                  const std::vector<double>& grid, double M) {
  const int N = static_cast<int>(grid.size());
  std::vector<double> lcell(N - 1);  // log int_cell e^{(V-M)/eps}
  for (int i = 0; i < N - 1; ++i) {
    const double x0 = grid[i], x1 = grid[i + 1];
    const double c = std::max((p.value(x0) - M) / eps, (p.value(x1) - M) / eps);
    auto f = [&](double t) { return std::exp((p.value(t) - M) / eps - c); };
    double v = gauss_kronrod_15(f, x0, x1, nullptr);
    if (!(v > 0) || !std::isfinite(v))
      throw IllConditioned("laplace_bvp: cell integral degenerate");
    lcell[i] = c + std::log(v);
  }

  // Row i couples u_{i-1}, u_i, u_{i+1}; assembled in log magnitudes and
  // exponentiated after subtracting the row maximum.
  std::vector<double> dl(N - 2), dd(N - 2), du(N - 2), rhs(N - 2, 0.0);
  for (int i = 1; i <= N - 2; ++i) {
    const double llow = -lcell[i - 1];
    const double lup = -lcell[i];
    const double lmass =
        (M - p.value(grid[i])) / eps +
        std::log(0.5 * (grid[i + 1] - grid[i - 1])) - std::log(eps);
    double r = std::max(llow, lup);
    if (s > 0) r = std::max(r, lmass + std::log(s));
    const double alow = std::exp(llow - r);
    const double aup = std::exp(lup - r);
    const double amass = s * std::exp(lmass - r);
    dl[i - 1] = alow;
    du[i - 1] = aup;
    dd[i - 1] = -(alow + aup + amass);
    if (!std::isfinite(dd[i - 1]))
      throw IllConditioned("laplace_bvp: row scaling failed");
    if (i == N - 2) rhs[i - 1] = -aup;  // boundary u(b) = 1
  }

  // Thomas algorithm
  const int m = N - 2;
  std::vector<double> c(m), d(m);
  c[0] = du[0] / dd[0];
  d[0] = rhs[0] / dd[0];
  for (int i = 1; i < m; ++i) {
    const double denom = dd[i] - dl[i] * c[i - 1];
    if (denom == 0.0) throw IllConditioned("laplace_bvp: singular pivot");
    c[i] = du[i] / denom;
    d[i] = (rhs[i] - dl[i] * d[i - 1]) / denom;
  }
  std::vector<double> u(N, 0.0);
  u[N - 1] = 1.0;
  u[m] = d[m - 1];
  for (int i = m - 2; i >= 0; --i) u[i + 1] = d[i] - c[i] * u[i + 2];
  return u;
}

}  // namespace

LaplaceEvaluation laplace_bvp(const ExitProblem& prob, double s) {
  prob.validate();
  if (s <= -1) throw DomainError("laplace_bvp: s must be > -1");
  const Potential& p = prob.potential;
  const double eps = prob.epsilon;
  const double M = interval_max_v(p, prob.a, prob.b);
  if (s == 0.0) {
    // u_s = u_0 by construction
    const int n = static_cast<int>(
        bvp_grid(prob.a, prob.b, prob.x, (1 << 10) + 1).size());
    return {0.0, 1.0, n, 0.0};
  }

  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int n_uniform = (1 << 10) + 1; n_uniform <= (1 << 20) + 1;
       n_uniform = 2 * (n_uniform - 1) + 1) {
    const std::vector<double> grid = bvp_grid(prob.a, prob.b, prob.x, n_uniform);
    const auto it = std::lower_bound(grid.begin(), grid.end(), prob.x);
    const int ix = static_cast<int>(it - grid.begin());
    const std::vector<double> us = solve_on_grid(p, eps, s, grid, M);
    const std::vector<double> u0 = solve_on_grid(p, eps, 0.0, grid, M);
    if (!(u0[ix] > 0)) throw IllConditioned("laplace_bvp: u0 vanished at x");
    const double value = us[ix] / u0[ix];
    if (std::isfinite(prev)) {
      const double diff = std::abs(value - prev);
      if (diff <= 1e-7 * std::max(std::abs(value), 1e-300))
        return {s, value, static_cast<int>(grid.size()),
                diff / std::max(std::abs(value), 1e-300)};
    }
    prev = value;
  }
  throw NoConvergence("laplace_bvp: grid refinement stalled");
}

}  // namespace rpaths
