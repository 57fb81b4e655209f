// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace nlsprod {

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance abs_tol.
/// Intended for smooth, rapidly decaying integrands (sech powers); depth is
/// capped at 48 bisection levels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

}  // namespace nlsprod
