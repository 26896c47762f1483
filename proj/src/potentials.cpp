#include "rpaths/potentials.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

#include "rpaths/errors.hpp"
#include "rpaths/quadrature.hpp"

namespace rpaths {

Potential Potential::quartic_double_well() {
  return Potential(PotentialKind::QuarticDoubleWell, 0.0, 0);
}

Potential Potential::quadratic_barrier(double alpha) {
  if (alpha <= 0) throw DomainError("quadratic barrier: alpha must be > 0");
  return Potential(PotentialKind::QuadraticBarrier, alpha, 0);
}

Potential Potential::abs_barrier(double beta) {
  if (beta <= 0) throw DomainError("abs barrier: beta must be > 0");
  return Potential(PotentialKind::AbsBarrier, beta, 0);
}

Potential Potential::flat(double half_width) {
  if (half_width <= 0) throw DomainError("flat: half-width must be > 0");
  return Potential(PotentialKind::Flat, half_width, 0);
}

Potential Potential::monomial(int n) {
  if (n < 1) throw DomainError("monomial: n must be >= 1");
  return Potential(PotentialKind::Monomial, 0.0, n);
}

namespace {
double parse_number(std::string_view s, const char* what) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DomainError(std::string("potential tag: bad ") + what);
  return v;
}
}  // namespace

Potential Potential::parse(std::string_view tag) {
  if (tag == "quartic") return quartic_double_well();
  auto colon = tag.find(':');
  std::string_view head = tag.substr(0, colon);
  std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : tag.substr(colon + 1);
  if (head == "quadratic") return quadratic_barrier(parse_number(arg, "alpha"));
  if (head == "abs") return abs_barrier(parse_number(arg, "beta"));
  if (head == "flat") return flat(parse_number(arg, "half-width"));
  if (head == "monomial")
    return monomial(static_cast<int>(parse_number(arg, "n")));
  throw DomainError("unknown potential tag: " + std::string(tag));
}

std::string Potential::tag() const {
  switch (kind_) {
    case PotentialKind::QuarticDoubleWell:
      return "quartic";
    case PotentialKind::QuadraticBarrier:
      return "quadratic:" + std::to_string(param_);
    case PotentialKind::AbsBarrier:
      return "abs:" + std::to_string(param_);
    case PotentialKind::Flat:
      return "flat:" + std::to_string(param_);
    case PotentialKind::Monomial:
      return "monomial:" + std::to_string(n_);
  }
  return "?";
}

double Potential::value(double x) const {
  switch (kind_) {
    case PotentialKind::QuarticDoubleWell:
      return 0.25 * x * x * x * x - 0.5 * x * x;
    case PotentialKind::QuadraticBarrier:
      return -0.5 * param_ * x * x;
    case PotentialKind::AbsBarrier:
      return -param_ * std::abs(x);
    case PotentialKind::Flat:
      return 0.0;
    case PotentialKind::Monomial: {
      const int p = 2 * n_ + 2;
      return -std::pow(x, p) / p;
    }
  }
  return 0.0;
}

double Potential::deriv(double x) const {
  switch (kind_) {
    case PotentialKind::QuarticDoubleWell:
      return x * x * x - x;
    case PotentialKind::QuadraticBarrier:
      return -param_ * x;
    case PotentialKind::AbsBarrier:
      return x == 0.0 ? 0.0 : (x > 0 ? -param_ : param_);
    case PotentialKind::Flat:
      return 0.0;
    case PotentialKind::Monomial:
      return -std::pow(x, 2 * n_ + 1);
  }
  return 0.0;
}

double Potential::deriv2(double x) const {
  switch (kind_) {
    case PotentialKind::QuarticDoubleWell:
      return 3.0 * x * x - 1.0;
    case PotentialKind::QuadraticBarrier:
      return -param_;
    case PotentialKind::AbsBarrier:
      return 0.0;
    case PotentialKind::Flat:
      return 0.0;
    case PotentialKind::Monomial:
      return -(2 * n_ + 1) * std::pow(x, 2 * n_);
  }
  return 0.0;
}

std::optional<double> Potential::left_well() const {
  if (kind_ == PotentialKind::QuarticDoubleWell) return -1.0;
  return std::nullopt;
}

std::optional<double> Potential::right_well() const {
  if (kind_ == PotentialKind::QuarticDoubleWell) return 1.0;
  return std::nullopt;
}

bool Potential::nondegenerate_maximum() const {
  return kind_ == PotentialKind::QuarticDoubleWell ||
         kind_ == PotentialKind::QuadraticBarrier;
}

double Potential::taylor_K() const {
  switch (kind_) {
    case PotentialKind::QuarticDoubleWell:
      return 3.0;  // |V'(x)+x| = |x|^3 <= 3 x^2 on |x| < delta
    case PotentialKind::QuadraticBarrier:
      return 1e-12;  // V' is exactly linear
    default:
      throw DegenerateMaximum("Taylor constants need a non-degenerate maximum");
  }
}

double Potential::taylor_delta() const {
  switch (kind_) {
    case PotentialKind::QuarticDoubleWell:
      return 0.3;
    case PotentialKind::QuadraticBarrier:
      return 1.0;
    default:
      throw DegenerateMaximum("Taylor constants need a non-degenerate maximum");
  }
}

double curvature_alpha(const Potential& p) {
  if (!p.nondegenerate_maximum())
    throw DegenerateMaximum("curvature alpha undefined for " + p.tag());
  return -p.deriv2(0.0);
}

namespace {

// Limit of alpha/V'(t) + 1/t as t -> 0, equal to -V'''(0)/(2 alpha).
double correction_integrand_limit(const Potential& p, double alpha) {
  switch (p.kind()) {
    case PotentialKind::QuarticDoubleWell:
    case PotentialKind::QuadraticBarrier:
      return 0.0;  // V''' (0) = 0 for both shapes
    default: {
      const double h = 1e-4;
      const double v3 = (p.deriv2(h) - p.deriv2(-h)) / (2.0 * h);
      return -v3 / (2.0 * alpha);
    }
  }
}

void check_interior(const Potential& p, double s, const char* what) {
  const double lo = p.left_well().value_or(-std::numeric_limits<double>::infinity());
  const double hi = p.right_well().value_or(std::numeric_limits<double>::infinity());
  if (!(s > lo && s < hi))
    throw DomainError(std::string(what) + ": point outside (x*, y*)");
}

}  // namespace

double correction_F(const Potential& p, double s) {
  const double alpha = curvature_alpha(p);
  check_interior(p, s, "correction_F");
  if (s == 0.0) return 0.0;
  const double limit0 = correction_integrand_limit(p, alpha);
  auto integrand = [&](double t) {
    if (std::abs(t) < 1e-8) return limit0;
    return alpha / p.deriv(t) + 1.0 / t;
  };
  // int_s^0 = -int_0^s
  const double lo = std::min(s, 0.0), hi = std::max(s, 0.0);
  double v = integrate(integrand, lo, hi, 1e-10);
  return s < 0 ? v : -v;
}

double deterministic_time(const Potential& p, double from, double to) {
  if (from == to) return 0.0;
  if (from == 0.0 || to == 0.0 || (from > 0) != (to > 0))
    throw DomainError("deterministic_time: segment must stay on one side of 0");
  const bool positive_side = from > 0;
  if (positive_side) {
    const double well = p.right_well().value_or(
        std::numeric_limits<double>::infinity());
    if (!(to > from))
      throw DomainError("deterministic_time: flow moves up on (0, y*)");
    if (!(to < well))
      throw DomainError("deterministic_time: segment crosses stationary point");
  } else {
    const double well = p.left_well().value_or(
        -std::numeric_limits<double>::infinity());
    if (!(to < from))
      throw DomainError("deterministic_time: flow moves down on (x*, 0)");
    if (!(to > well))
      throw DomainError("deterministic_time: segment crosses stationary point");
  }
  auto integrand = [&](double t) { return -1.0 / p.deriv(t); };
  const double lo = std::min(from, to), hi = std::max(from, to);
  double v = integrate(integrand, lo, hi, 1e-10);
  return from < to ? v : -v;
}

double laplace_asymptotic(LaplaceKind kind, double phi_at_a,
                          double phi_deriv_or_curv, double psi_at_a,
                          double eps) {
  if (eps <= 0) throw DomainError("laplace_asymptotic: eps must be > 0");
  switch (kind) {
    case LaplaceKind::QuadraticInteriorMax:
      if (phi_deriv_or_curv >= 0)
        throw SignError("laplace_asymptotic: curvature must be negative");
      return std::sqrt(M_PI * eps / (2.0 * std::abs(phi_deriv_or_curv))) *
             std::exp(phi_at_a / eps) * psi_at_a;
    case LaplaceKind::LinearBoundaryDecay:
      if (phi_deriv_or_curv >= 0)
        throw SignError("laplace_asymptotic: derivative must be negative");
      return eps / std::abs(phi_deriv_or_curv) * std::exp(phi_at_a / eps) *
             psi_at_a;
  }
  throw DomainError("laplace_asymptotic: unknown kind");
}

}  // namespace rpaths
