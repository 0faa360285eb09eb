#include "jnforce/antenna_geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "jnforce/constants.hpp"

namespace jnforce {

using constants::mu0;
using constants::pi;

void WireGeometry::validate() const {
  if (!(length > 0.0)) throw std::domain_error("WireGeometry: length must be > 0");
  if (!(wire_radius > 0.0) || wire_radius >= length) {
    throw std::domain_error("WireGeometry: require 0 < r0 << l");
  }
  if (!(separation > 2.0 * wire_radius)) {
    throw std::domain_error("WireGeometry: wires overlap (d <= 2 r0)");
  }
}

double self_inductance(const WireGeometry& g) {
  g.validate();
  return mu0 * g.length / (2.0 * pi) * (std::log(2.0 * g.length / g.wire_radius) - 1.0);
}

double mutual_inductance(const WireGeometry& g) {
  g.validate();
  const double l = g.length;
  const double d = g.separation;
  const double ratio = l / d;
  return mu0 * l / (2.0 * pi) *
         (std::asinh(ratio) - std::sqrt(1.0 + 1.0 / (ratio * ratio)) + 1.0 / ratio);
}

double mutual_inductance_gradient(const WireGeometry& g) {
  g.validate();
  const double l = g.length;
  const double d = g.separation;
  return mu0 / (2.0 * pi) * (d - std::hypot(d, l)) / d;
}

CouplingProfile coupling_profile(const WireGeometry& g) {
  const double l_self = self_inductance(g);
  const double m = mutual_inductance(g) / l_self;
  if (m >= 1.0) {
    throw std::domain_error("coupling_profile: m >= 1, geometry outside the thin-wire regime");
  }
  CouplingProfile cp;
  cp.m = m;
  cp.dm2_dd = 2.0 * m * mutual_inductance_gradient(g) / l_self;
  return cp;
}

namespace {

// M = (mu0 / 4pi) Int_0^l Int_0^l ds dt / sqrt((s-t)^2 + d^2), scaled to the
// unit square.  d > 0 keeps the kernel regular; the inner tolerance is kept
// two orders below the outer one so the iterated error composes cleanly.
double neumann_filament_integral(double l, double d, const QuadratureSpec& outer_spec) {
  QuadratureSpec inner = outer_spec;
  inner.rel_tol = std::max(outer_spec.rel_tol * 1e-2, 1e-13);
  inner.abs_tol = 0.0;

  const double delta = d / l;
  auto outer = [&](double v) {
    auto kernel = [&](double w) {
      const double u = v - w;
      return 1.0 / std::sqrt(u * u + delta * delta);
    };
    const double ridge[] = {v};
    return integrate_finite(kernel, 0.0, 1.0, inner, ridge).value;
  };
  const QuadratureResult q = integrate_finite(outer, 0.0, 1.0, outer_spec);
  return mu0 * l / (4.0 * pi) * q.value;
}

}  // namespace

double neumann_mutual_inductance(const WireGeometry& g, const QuadratureSpec& outer_spec) {
  g.validate();
  return neumann_filament_integral(g.length, g.separation, outer_spec);
}

double neumann_self_inductance(const WireGeometry& g, const QuadratureSpec& outer_spec) {
  g.validate();
  return neumann_filament_integral(g.length, g.wire_radius, outer_spec);
}

}  // namespace jnforce
