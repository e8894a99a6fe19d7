#pragma once

#include <cmath>
#include <functional>

#include "ratlink/errors.hpp"

namespace ratlink {

struct SimpsonOptions {
  double abs_tol = 1e-10;  // per subinterval
  int max_depth = 40;
  int initial_panels = 16;
};

namespace detail {

template <class F>
double simpson_refine(const F& f, double a, double b, double fa, double fm, double fb,
                      double whole, const SimpsonOptions& opts, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * opts.abs_tol) return left + right + delta / 15.0;
  if (depth >= opts.max_depth) {
    throw Error(ErrorKind::QuadratureFailure,
                "adaptive Simpson reached maximum depth without meeting tolerance");
  }
  return simpson_refine(f, a, m, fa, flm, fm, left, opts, depth + 1) +
         simpson_refine(f, m, b, fm, frm, fb, right, opts, depth + 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] (signed: a > b negates).
/// The interval is first split into `initial_panels` equal panels.
/// Throws QuadratureFailure when a subinterval exceeds `max_depth`.
template <class F>
double adaptive_simpson(const F& f, double a, double b, const SimpsonOptions& opts = {}) {
  if (a == b) return 0.0;
  const int panels = opts.initial_panels > 0 ? opts.initial_panels : 1;
  const double h = (b - a) / panels;
  double total = 0.0;
  double x0 = a;
  double f0 = f(x0);
  for (int p = 0; p < panels; ++p) {
    const double x1 = p + 1 == panels ? b : a + (p + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += detail::simpson_refine(f, x0, x1, f0, fm, f1, whole, opts, 0);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

}  // namespace ratlink
