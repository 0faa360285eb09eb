#pragma once

#include <functional>
#include <span>

namespace jnforce {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  // Expected algebraic decay power of the integrand at infinity.  A value in
  // (1, 2] marks a slowly decaying tail and seeds extra panels far out on the
  // compactified axis.  0 means "no hint".
  double tail_exponent_hint = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (7,15) integration of f over (0, inf).  The axis is
// compactified with x = u/(1-u) and panels are split worst-error-first until
// the accumulated estimate satisfies err <= max(abs_tol, rel_tol*|value|) or
// max_subdivisions panels exist.  `breakpoints` forces panel boundaries at
// the given abscissae (resonance positions, thermal knees).
//
// Throws std::domain_error when the integrand returns a non-finite value;
// the message carries the offending abscissa.  Non-convergence is not an
// error: the result comes back with converged = false.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec = {},
                                         std::span<const double> breakpoints = {});

// Same panel engine on a finite interval [lo, hi].
QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double lo, double hi,
                                  const QuadratureSpec& spec = {},
                                  std::span<const double> breakpoints = {});

struct DerivativeEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Ridders-style central difference: step-halving with polynomial
// extrapolation, error taken from the spread of the extrapolation tableau.
// A one-sided discrepancy guard inflates the error estimate when f has a
// kink at t0 (where pure central differences cancel to a misleading zero).
DerivativeEstimate derivative_scalar(const std::function<double(double)>& f,
                                     double t0, double h0);

}  // namespace jnforce
