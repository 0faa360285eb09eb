#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "jnforce/antenna_geometry.hpp"
#include "jnforce/constants.hpp"
#include "jnforce/quadrature.hpp"

using namespace jnforce;

TEST_CASE("self inductance of a thin wire") {
  WireGeometry g{0.1, 1e-4, 0.01};
  // (mu0 l / 2pi)(ln(2l/r0) - 1) = 2e-8 (ln 2000 - 1)
  const double expected = 2e-8 * (std::log(2000.0) - 1.0);
  CHECK(self_inductance(g) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(self_inductance(g) == doctest::Approx(1.3202e-7).epsilon(1e-4));

  // doubling l more than doubles L (l ln l growth)
  WireGeometry g2 = g;
  g2.length = 0.2;
  CHECK(self_inductance(g2) > 2.0 * self_inductance(g));

  // fat wire: thin-wire assumption breaks down
  WireGeometry fat{0.1, 0.04, 0.09};
  CHECK(fat.thin_wire_strained());
  CHECK_FALSE(g.thin_wire_strained());
}

TEST_CASE("self inductance cross-checked against the filament integral at r0") {
  WireGeometry g{0.1, 1e-4, 0.01};
  const double closed = self_inductance(g);
  const double neumann = neumann_self_inductance(g);
  // the closed form drops O(r0/l) terms of the surface-filament integral
  CHECK(std::abs(closed - neumann) / neumann < 5.0 * g.wire_radius / g.length);
}

TEST_CASE("mutual inductance closed form") {
  WireGeometry g{0.1, 1e-4, 0.01};
  // 2e-8 [ln(10 + sqrt(101)) - sqrt(1.01) + 0.1]
  const double expected =
      2e-8 * (std::log(10.0 + std::sqrt(101.0)) - std::sqrt(1.01) + 0.1);
  CHECK(mutual_inductance(g) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(mutual_inductance(g) == doctest::Approx(4.186e-8).epsilon(1e-3));
}

TEST_CASE("mutual inductance decreases with separation and vanishes far away") {
  WireGeometry g{0.1, 1e-4, 0.001};
  double prev = mutual_inductance(g);
  CHECK(prev > 0.0);
  for (double d : {0.002, 0.01, 0.05, 0.2, 1.0, 10.0}) {
    g.separation = d;
    const double m = mutual_inductance(g);
    CHECK(m > 0.0);
    CHECK(m < prev);
    prev = m;
  }
  CHECK(prev < 2e-10);  // d = 100 l
  // large-d decay verified against the Neumann integral
  g.separation = 2.0;
  CHECK(neumann_mutual_inductance(g) == doctest::Approx(mutual_inductance(g)).epsilon(1e-8));
}

TEST_CASE("closed form vs Neumann double integral, l/d in [2, 100]") {
  for (double ratio : {2.0, 5.0, 10.0, 50.0, 100.0}) {
    WireGeometry g{0.1, 1e-5, 0.1 / ratio};
    const double closed = mutual_inductance(g);
    const double oracle = neumann_mutual_inductance(g);
    CHECK(std::abs(closed - oracle) / closed < 1e-6);
  }
}

TEST_CASE("coupling profile") {
  WireGeometry g{0.1, 1e-4, 0.01};
  const auto cp = coupling_profile(g);
  CHECK(cp.m == doctest::Approx(0.3171).epsilon(1e-3));
  CHECK(cp.dm2_dd < 0.0);

  // analytic gradient vs central difference
  const auto fd = derivative_scalar(
      [&](double d) {
        WireGeometry gg = g;
        gg.separation = d;
        const double m = coupling_profile(gg).m;
        return m * m;
      },
      g.separation, 1e-3 * g.separation);
  CHECK(cp.dm2_dd == doctest::Approx(fd.value).epsilon(1e-6));

  // m -> 0 and gradient -> 0 at large separation
  WireGeometry far = g;
  far.separation = 50.0;
  const auto cp_far = coupling_profile(far);
  CHECK(cp_far.m < 1e-3);
  CHECK(std::abs(cp_far.dm2_dd) < 1e-8);  // ~ -9e-10 at d = 500 l
}

TEST_CASE("passivity: m < 1 over a wide geometry sweep") {
  for (double lr : {1e2, 1e3, 1e4}) {
    for (double ld : {2.0, 10.0, 100.0, 1000.0}) {
      const double l = 0.1;
      WireGeometry g{l, l / lr, l / ld};
      if (g.separation <= 2.0 * g.wire_radius) continue;
      const auto cp = coupling_profile(g);
      CHECK(cp.m > 0.0);
      CHECK(cp.m < 1.0);
    }
  }
}

TEST_CASE("mirrored geometry gives identical M") {
  WireGeometry a{0.1, 1e-4, 0.013};
  WireGeometry b = a;  // separation is a scalar distance; symmetry is trivial
  CHECK(mutual_inductance(a) == mutual_inductance(b));
}

TEST_CASE("geometry invariants are enforced") {
  CHECK_THROWS_AS(self_inductance({0.0, 1e-4, 0.01}), std::domain_error);
  CHECK_THROWS_AS(self_inductance({0.1, 0.0, 0.01}), std::domain_error);
  CHECK_THROWS_AS(mutual_inductance({0.1, 1e-2, 1e-2}), std::domain_error);  // overlap
}
