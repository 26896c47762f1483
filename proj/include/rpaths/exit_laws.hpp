#pragma once

#include "rpaths/potentials.hpp"

namespace rpaths {

// Conditioned first-exit setting: diffusion dX = -V'(X)dt + sqrt(2 eps) dB on
// (a, b), started at x, conditioned on exiting through b.
struct ExitProblem {
  Potential potential;
  double a;
  double b;
  double x;
  double epsilon;

  void validate() const;
};

struct LaplaceEvaluation {
  double s;
  double value;
  int solver_grid_size;
  double residual;
};

// log int_lo^hi e^{(V - shift)/eps} ds, with breakpoints clustered at the
// endpoints and at any interior maximum of V.
double log_integral_exp_v(const Potential& p, double lo, double hi, double eps,
                          double shift);

// u_0(x) = P_x(T_b < T_a), computed in log domain relative to max V.
double exit_probability(const ExitProblem& prob);

// Doob-conditioned drift b_V(at) = -V'(at) + 2 eps e^{V(at)/eps} /
// int_a^at e^{V/eps}.
double h_drift(const ExitProblem& prob, double at);

// Solves eps u'' - V' u' = s u with u(a)=0, u(b)=1 by exponentially fitted
// finite volumes and returns F_eps(s, x) = u_s(x)/u_0(x). The grid is refined
// (doubling, cap 2^20+1 base nodes) until successive values agree to 1e-7
// relative.
LaplaceEvaluation laplace_bvp(const ExitProblem& prob, double s);

}  // namespace rpaths
