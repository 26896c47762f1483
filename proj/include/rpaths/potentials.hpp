#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rpaths {

enum class PotentialKind {
  QuarticDoubleWell,   // V(x) = x^4/4 - x^2/2
  QuadraticBarrier,    // V(x) = -alpha x^2/2
  AbsBarrier,          // V(x) = -beta |x|
  Flat,                // V = 0 (half_width carries the default interval)
  Monomial,            // V(x) = -x^(2n+2)/(2n+2)
};

class Potential {
 public:
  static Potential quartic_double_well();
  static Potential quadratic_barrier(double alpha);
  static Potential abs_barrier(double beta);
  static Potential flat(double half_width);
  static Potential monomial(int n);

  // Config-file tags: "quartic", "quadratic:{alpha}", "abs:{beta}",
  // "flat:{b}", "monomial:{n}".
  static Potential parse(std::string_view tag);
  std::string tag() const;

  double value(double x) const;   // V
  double deriv(double x) const;   // V'
  double deriv2(double x) const;  // V''

  PotentialKind kind() const { return kind_; }
  double param() const { return param_; }
  int monomial_n() const { return n_; }

  // Stationary points x* < 0 < y*, where the landscape has them.
  std::optional<double> left_well() const;
  std::optional<double> right_well() const;

  // Double well with a non-degenerate maximum at 0 (the strictly concave
  // saddle setting). Quartic and quadratic-barrier shapes qualify.
  bool nondegenerate_maximum() const;

  // Stored Taylor sandwich constants: |V'(x) + alpha x| <= K x^2 on |x| < delta.
  double taylor_K() const;
  double taylor_delta() const;

 private:
  Potential(PotentialKind k, double p, int n) : kind_(k), param_(p), n_(n) {}
  PotentialKind kind_;
  double param_;
  int n_;
};

// alpha = -V''(0). Throws DegenerateMaximum unless the maximum at 0 is
// non-degenerate.
double curvature_alpha(const Potential& p);

// F(s) = int_s^0 (alpha/V'(t) + 1/t) dt, integrand patched at the removable
// singularity t = 0. Absolute quadrature error <= 1e-10.
double correction_F(const Potential& p, double s);

// Travel time of the noiseless flow dx/dt = -V'(x) from `from` to `to`,
// -int 1/V' ds. Both points must lie strictly on the same side of 0, between
// 0 and the nearest well, ordered along the flow.
double deterministic_time(const Potential& p, double from, double to);

enum class LaplaceKind { QuadraticInteriorMax, LinearBoundaryDecay };

// Leading-order Laplace approximation of int_a^b e^{phi/eps} psi:
//   quadratic: sqrt(pi eps / (2|phi''(a)|)) e^{phi(a)/eps} psi(a)
//   linear:    (eps/|phi'(a)|) e^{phi(a)/eps} psi(a)
double laplace_asymptotic(LaplaceKind kind, double phi_at_a,
                          double phi_deriv_or_curv, double psi_at_a,
                          double eps);

}  // namespace rpaths
