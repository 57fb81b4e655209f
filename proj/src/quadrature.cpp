// SPDX-License-Identifier: Apache-2.0
#include "nlsprod/quadrature.hpp"

#include <cmath>

namespace nlsprod {

namespace {

struct Simpson {
  const std::function<double(double)>& f;

  double eval(double a, double fa, double m, double fm, double b, double fb,
              double whole, double tol, int depth) const {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // stop at the requested tolerance or at the rounding floor of the panel
    const double floor_tol = 1e-16 * (std::abs(left) + std::abs(right));
    if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(tol, floor_tol))
      return left + right + delta / 15.0;
    return eval(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           eval(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Simpson{f}.eval(a, fa, m, fm, b, fb, whole, abs_tol, 30);
}

}  // namespace nlsprod
