#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mgrid/specialfn.hpp"

namespace mgrid::quadrature {

/// Vector-valued integrand: writes f(t) into `out` (size fixed per call of integrate).
using Integrand = std::function<void(double t, std::span<Complex> out)>;

struct Result {
  std::vector<Complex> value;
  double error = 0;  // estimated absolute error, max over components
  int evaluations = 0;
};

/// Adaptive composite Gauss-Legendre on [a, b]; each panel is accepted once the two-half
/// refinement agrees with the whole-panel rule within its share of abs_tol.
Result integrate(const Integrand& f, std::size_t width, double a, double b, double abs_tol);

/// Integral over [a, infinity) of an integrand decaying like e^{-rate t} up to polynomial factors.
/// The upper end is pushed out until the integrand is below the tolerance.
Result integrate_to_infinity(const Integrand& f, std::size_t width, double a, double rate, double abs_tol);

}  // namespace mgrid::quadrature
