#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "jnforce/constants.hpp"
#include "jnforce/lifshitz.hpp"
#include "jnforce/quadrature.hpp"

using namespace jnforce;
using namespace jnforce::constants;

namespace {

// temperature at which kB T a / (hbar c) = tau
double temperature_for(double tau, double a) {
  return tau * hbar * speed_of_light / (k_boltzmann * a);
}

}  // namespace

TEST_CASE("permittivity on the imaginary axis") {
  const auto plasma = DielectricModel::plasma(1.37e16);
  CHECK(permittivity_imag_freq(plasma, 1.37e16) == doctest::Approx(2.0).epsilon(1e-12));

  // drude with gamma = 0 equals plasma pointwise
  const auto drude0 = DielectricModel::drude(1.37e16, 0.0);
  for (double xi : {1e12, 1e14, 1e16}) {
    CHECK(permittivity_imag_freq(drude0, xi) ==
          doctest::Approx(permittivity_imag_freq(plasma, xi)).epsilon(1e-14));
  }

  // xi = gamma = Wp -> 1.5
  const auto drude = DielectricModel::drude(1.37e16, 1.37e16);
  CHECK(permittivity_imag_freq(drude, 1.37e16) == doctest::Approx(1.5).epsilon(1e-12));

  // drude <= plasma at equal xi, both > 1
  const auto gold = DielectricModel::gold_like();
  for (double xi : {1e13, 1e15, 3e16}) {
    const double ed = permittivity_imag_freq(gold, xi);
    const double ep = permittivity_imag_freq(DielectricModel::plasma(1.37e16), xi);
    CHECK(ed > 1.0);
    CHECK(ed <= ep);
  }
  CHECK_THROWS_AS(permittivity_imag_freq(gold, 0.0), std::domain_error);
}

TEST_CASE("zero-frequency coefficient jumps discontinuously with dissipation") {
  CHECK(zero_frequency_coefficient(DielectricModel::plasma(1.37e16)) ==
        doctest::Approx(1.8769e32).epsilon(1e-4));
  CHECK(zero_frequency_coefficient(DielectricModel::drude(1.37e16, 1e8)) == 0.0);
  // even for infinitesimal dissipation
  CHECK(zero_frequency_coefficient(DielectricModel::drude(1.37e16, 1e-30)) == 0.0);
  // while the permittivity itself converges pointwise to the plasma value
  const auto tiny = DielectricModel::drude(1.37e16, 1e-30);
  const auto plasma = DielectricModel::plasma(1.37e16);
  for (double xi : {1e12, 1e15}) {
    CHECK(permittivity_imag_freq(tiny, xi) ==
          doctest::Approx(permittivity_imag_freq(plasma, xi)).epsilon(1e-12));
  }
}

TEST_CASE("reflection coefficients") {
  // vacuum degenerate model: eps = 1 -> both vanish
  const auto vacuum = DielectricModel::plasma(0.0);
  const auto rv = reflection_coefficients(vacuum, 1e14, 1e6);
  CHECK(rv.te == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rv.tm == doctest::Approx(0.0).epsilon(1e-15));

  // |r| <= 1 across a frequency/wavenumber grid
  for (const auto& model : {DielectricModel::gold_like(), DielectricModel::plasma(1.37e16)}) {
    for (double xi : {1e12, 1e14, 1e16}) {
      for (double k : {1e4, 1e6, 1e8}) {
        const auto r = reflection_coefficients(model, xi, k);
        CHECK(std::abs(r.te) <= 1.0);
        CHECK(std::abs(r.tm) <= 1.0);
      }
    }
  }

  // n = 0 limits: drude TE drops out, plasma TE survives, TM -> 1 for both
  const auto rd = zero_frequency_reflection(DielectricModel::gold_like(), 1e6);
  CHECK(rd.te == 0.0);
  CHECK(rd.tm == 1.0);
  const auto rp = zero_frequency_reflection(DielectricModel::plasma(1.37e16), 1e6);
  const double km = std::hypot(1e6, 1.37e16 / speed_of_light);
  CHECK(rp.te == doctest::Approx((1e6 - km) / (1e6 + km)).epsilon(1e-12));
  CHECK(rp.te != 0.0);
  CHECK(rp.tm == 1.0);
  // dispatch through the general entry point
  const auto r0 = reflection_coefficients(DielectricModel::gold_like(), 0.0, 1e6);
  CHECK(r0.te == 0.0);

  const auto ri = reflection_coefficients(DielectricModel::ideal(), 1e14, 1e6);
  CHECK(ri.te == -1.0);
  CHECK(ri.tm == 1.0);
}

TEST_CASE("classical limit: analytic n=0 sums, ideal and drude") {
  const double a = 1e-4;
  const double T = temperature_for(10.0, a);
  const double kbt = k_boltzmann * T;

  LifshitzConfig cfg;
  cfg.separation = a;
  cfg.temperature = T;
  cfg.model = DielectricModel::ideal();
  const auto fi = free_energy_per_area(cfg);
  const auto pi_ideal = pressure(cfg);

  // oracle: term-by-term analytic integrals, Int v ln(1-e^-v) = -zeta3 and
  // Int v^2 e^-v/(1-e^-v) = 2 zeta3 per unit-reflection polarization, n=0 at
  // half weight; n>=1 terms are e^{-4 pi 10} and invisible
  const double f_ideal_exact = kbt / (8.0 * pi * a * a) * 0.5 * 2.0 * -zeta3;
  const double p_ideal_exact = -kbt / (8.0 * pi * a * a * a) * 0.5 * 2.0 * 2.0 * zeta3;
  CHECK(fi.value == doctest::Approx(f_ideal_exact).epsilon(1e-8));
  CHECK(pi_ideal.value == doctest::Approx(p_ideal_exact).epsilon(1e-8));
  CHECK(fi.converged);
  CHECK(fi.value < 0.0);
  CHECK(pi_ideal.value < 0.0);

  cfg.model = DielectricModel::gold_like();
  const auto fd = free_energy_per_area(cfg);
  const auto pd = pressure(cfg);
  // the drude n=0 term keeps TM only: exactly half of ideal
  CHECK(fd.value / fi.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(pd.value / pi_ideal.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("pressure equals the central difference of the free energy") {
  LifshitzConfig cfg;
  cfg.separation = 1e-6;
  cfg.temperature = 300.0;
  cfg.model = DielectricModel::gold_like();
  const auto p = pressure(cfg);
  const auto fd = derivative_scalar(
      [&](double a) {
        LifshitzConfig c = cfg;
        c.separation = a;
        return free_energy_per_area(c).value;
      },
      cfg.separation, 0.02 * cfg.separation);
  CHECK(std::abs(p.value + fd.value) / std::abs(p.value) < 1e-4);
}

TEST_CASE("plasma zero-temperature anchor") {
  const double a = 1e-6;
  LifshitzConfig cfg;
  cfg.separation = a;
  cfg.temperature = temperature_for(0.005, a);
  cfg.model = DielectricModel::plasma(3000.0 * speed_of_light / a);
  const auto p = pressure(cfg);
  const double ideal_t0 = -pi * pi * hbar * speed_of_light / (240.0 * a * a * a * a);
  CHECK(std::abs(p.value - ideal_t0) / std::abs(ideal_t0) < 0.02);
  CHECK(p.converged);
  // dense-sum free energy against the zero-temperature closed form
  const auto fe = free_energy_per_area(cfg);
  const double e_t0 = -pi * pi * hbar * speed_of_light / (720.0 * a * a * a);
  CHECK(std::abs(fe.value - e_t0) / std::abs(e_t0) < 0.01);
}

TEST_CASE("drude magnitude never exceeds plasma at shared parameters") {
  for (double a : {0.5e-6, 1e-6, 2e-6}) {
    for (double T : {77.0, 300.0}) {
      LifshitzConfig cfg;
      cfg.separation = a;
      cfg.temperature = T;
      cfg.model = DielectricModel::plasma(1.37e16);
      const double pp = pressure(cfg).value;
      cfg.model = DielectricModel::gold_like();
      const double pd = pressure(cfg).value;
      CHECK(std::abs(pd) <= std::abs(pp) + 1e-12 * std::abs(pp));
    }
  }
}

TEST_CASE("matsubara tail: terms decrease and the truncation bound is honest") {
  LifshitzConfig cfg;
  cfg.separation = 1e-6;
  cfg.temperature = 300.0;
  cfg.model = DielectricModel::gold_like();
  const auto loose = free_energy_per_area(cfg);
  CHECK(loose.converged);
  CHECK(loose.terms > 2);
  CHECK(loose.truncation_bound >= 0.0);

  LifshitzConfig tight = cfg;
  tight.tail_tolerance = 1e-14;
  const auto ref = free_energy_per_area(tight);
  // dropping the tail cost no more than the reported bound (plus quadrature noise)
  CHECK(std::abs(loose.value - ref.value) <=
        loose.truncation_bound + 10.0 * (loose.quadrature_error + ref.quadrature_error));
}

TEST_CASE("evanescent frequency scale") {
  const auto gold = DielectricModel::gold_like();
  const double w = evanescent_scale(1e-6, gold);
  const double expected =
      4.5e13 * std::pow(speed_of_light / 1e-6 / 1.37e16, 2.0);
  CHECK(w == doctest::Approx(expected).epsilon(1e-12));
  CHECK(w == doctest::Approx(2.16e10).epsilon(1e-2));
  // a doubled -> quartered
  CHECK(evanescent_scale(2e-6, gold) == doctest::Approx(w / 4.0).epsilon(1e-12));
  // gamma = 0 -> 0
  CHECK(evanescent_scale(1e-6, DielectricModel::drude(1.37e16, 0.0)) == 0.0);
  CHECK_THROWS_AS(evanescent_scale(1e-6, DielectricModel::plasma(1.37e16)),
                  std::domain_error);
  CHECK_THROWS_AS(evanescent_scale(1e-6, DielectricModel::ideal()), std::domain_error);
}

TEST_CASE("config validation") {
  LifshitzConfig cfg;
  cfg.separation = -1.0;
  CHECK_THROWS_AS(free_energy_per_area(cfg), std::invalid_argument);
  cfg.separation = 1e-6;
  cfg.temperature = 0.0;
  CHECK_THROWS_AS(free_energy_per_area(cfg), std::invalid_argument);
  cfg.temperature = 300.0;
  cfg.model = DielectricModel::plasma(0.0);
  CHECK_THROWS_AS(free_energy_per_area(cfg), std::invalid_argument);
}
