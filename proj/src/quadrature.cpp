#include "rpaths/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "rpaths/errors.hpp"

namespace rpaths {

namespace {

// Kronrod 15 abscissae (positive half) and weights; Gauss 7 weights sit on
// the odd Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double lo, hi, value, err;
  bool operator<(const Interval& o) const { return err < o.err; }
};

Interval eval(const std::function<double(double)>& f, double lo, double hi) {
  double err = 0.0;
  double v = gauss_kronrod_15(f, lo, hi, &err);
  return {lo, hi, v, err};
}

}  // namespace

double gauss_kronrod_15(const std::function<double(double)>& f, double lo,
                        double hi, double* err) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 8; ++j) {
    double fv;
    if (j == 7) {
      fv = f(c);
      resk += kWgk[7] * fv;
      resg += kWg[3] * fv;
    } else {
      const double dx = h * kXgk[j];
      fv = f(c - dx) + f(c + dx);
      resk += kWgk[j] * fv;
      if (j % 2 == 1) resg += kWg[j / 2] * fv;
    }
  }
  if (err) *err = std::abs(resk - resg) * std::abs(h);
  return resk * h;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_intervals) {
  return integrate_split(f, {lo, hi}, abs_tol, max_intervals);
}

double integrate_split(const std::function<double(double)>& f,
                       std::vector<double> breakpoints, double abs_tol,
                       int max_intervals) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());
  if (breakpoints.size() < 2)
    throw DomainError("integrate_split: need at least two distinct points");

  std::priority_queue<Interval> heap;
  double total = 0.0, total_err = 0.0;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    Interval iv = eval(f, breakpoints[i], breakpoints[i + 1]);
    total += iv.value;
    total_err += iv.err;
    heap.push(iv);
  }

  int n = static_cast<int>(heap.size());
  while (total_err > abs_tol && n < max_intervals) {
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // interval at floating-point resolution; accept its estimate
      total_err -= worst.err;
      continue;
    }
    Interval left = eval(f, worst.lo, mid);
    Interval right = eval(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++n;
  }
  if (total_err > abs_tol)
    throw QuadratureFailure("adaptive quadrature: tolerance not met");
  return total;
}

std::vector<double> geometric_cluster(double lo, double hi, double target,
                                      int depth) {
  std::vector<double> pts{lo, hi};
  const double len = hi - lo;
  if (target < lo || target > hi) return pts;
  pts.push_back(target);
  double off = 0.5 * len;
  for (int j = 0; j < depth; ++j, off *= 0.5) {
    if (target - off > lo) pts.push_back(target - off);
    if (target + off < hi) pts.push_back(target + off);
  }
  return pts;
}

}  // namespace rpaths
