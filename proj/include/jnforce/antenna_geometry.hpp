#pragma once

#include "jnforce/quadrature.hpp"

namespace jnforce {

// Two parallel, aligned, equal-length thin wires.
struct WireGeometry {
  double length = 0.0;       // m
  double wire_radius = 0.0;  // m
  double separation = 0.0;   // m

  void validate() const;  // throws std::domain_error on invariant violation
  // raised when r0/d > 0.1 and the thin-wire formulas start to degrade
  bool thin_wire_strained() const { return wire_radius / separation > 0.1; }
};

// L = (mu0 l / 2pi) (ln(2l/r0) - 1), the low-frequency thin-wire value.
double self_inductance(const WireGeometry& g);

// Closed form for parallel aligned segments:
// M = (mu0 l / 2pi) [asinh(l/d) - sqrt(1 + d^2/l^2) + d/l]
double mutual_inductance(const WireGeometry& g);

// dM/dd = (mu0 / 2pi) (d - sqrt(d^2 + l^2)) / d  (< 0)
double mutual_inductance_gradient(const WireGeometry& g);

struct CouplingProfile {
  double m = 0.0;        // M/L
  double dm2_dd = 0.0;   // d(m^2)/dd, 1/m
};

// m = M/L and its separation gradient; throws when the geometry leaves the
// thin-wire regime so far that m >= 1.
CouplingProfile coupling_profile(const WireGeometry& g);

// Neumann double integral over the unit square, via iterated adaptive
// quadrature.  Verification path only; the closed form above is production.
double neumann_mutual_inductance(const WireGeometry& g,
                                 const QuadratureSpec& outer_spec = {});

// Same filament double integral evaluated at distance r0, used to cross-check
// the self-inductance formula at finite wire radius.
double neumann_self_inductance(const WireGeometry& g,
                               const QuadratureSpec& outer_spec = {});

}  // namespace jnforce
