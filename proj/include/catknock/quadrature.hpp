#pragma once

#include <cmath>
#include <vector>

namespace catknock::quad {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double err = left + right - whole;
  if (depth <= 0 || std::fabs(err) <= 15 * tol) return left + right + err / 15;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with absolute tolerance.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 60) {
  if (a == b) return 0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Integrate piecewise over [knots_0, knots_1], ..., splitting tolerance
// evenly; knots mark kinks of the integrand.
template <class F>
double adaptive_simpson_knots(const F& f, const std::vector<double>& knots,
                              double tol, int max_depth = 60) {
  if (knots.size() < 2) return 0;
  double per = tol / static_cast<double>(knots.size() - 1);
  double total = 0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += adaptive_simpson(f, knots[i], knots[i + 1], per, max_depth);
  return total;
}

}  // namespace catknock::quad
