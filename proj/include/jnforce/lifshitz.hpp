#pragma once

#include "jnforce/quadrature.hpp"

namespace jnforce {

enum class MetalKind { plasma, drude, ideal };

struct DielectricModel {
  MetalKind kind = MetalKind::ideal;
  double plasma_frequency = 0.0;  // rad/s
  double relaxation = 0.0;        // rad/s, drude only

  static DielectricModel ideal() { return {MetalKind::ideal, 0.0, 0.0}; }
  static DielectricModel plasma(double omega_p) { return {MetalKind::plasma, omega_p, 0.0}; }
  static DielectricModel drude(double omega_p, double gamma) {
    return {MetalKind::drude, omega_p, gamma};
  }
  // Conventional literature numbers for gold; defaults, not fitted data.
  static DielectricModel gold_like() { return drude(1.37e16, 4.5e13); }
};

// Permittivity on the imaginary axis: plasma 1 + Wp^2/xi^2,
// drude 1 + Wp^2/(xi (xi + gamma)).  Real and >= 1 for xi > 0.
double permittivity_imag_freq(const DielectricModel& model, double xi);

// A = lim_{xi->0} xi^2 eps(i xi): Wp^2 for the plasma model, 0 for drude with
// any gamma > 0.  This discontinuity controls the n = 0 Matsubara term.
double zero_frequency_coefficient(const DielectricModel& model);

struct Reflection {
  double te = 0.0;
  double tm = 0.0;
};

// Imaginary-frequency Fresnel coefficients at Matsubara frequency xi and
// transverse wavenumber k:
//   r_TE = (q - km)/(q + km), r_TM = (eps q - km)/(eps q + km),
//   q = sqrt(k^2 + xi^2/c^2), km = sqrt(k^2 + eps xi^2/c^2).
// xi = 0 is dispatched to the hardcoded limits below.
Reflection reflection_coefficients(const DielectricModel& model, double xi, double k);

// n = 0 limits per model, fixed analytically rather than sampled at tiny xi:
// drude TE -> 0, TM -> 1; plasma TE from Wp, TM -> 1; ideal both unit.
Reflection zero_frequency_reflection(const DielectricModel& model, double k);

struct LifshitzConfig {
  double separation = 1e-6;   // m
  double temperature = 300.0; // K
  DielectricModel model = DielectricModel::gold_like();
  double tail_tolerance = 1e-10;   // stop when a term falls below this fraction
  int max_matsubara_terms = 200000;
  QuadratureSpec k_spec{1e-10, 0.0, 4000, 0.0};

  void validate() const;
};

struct LifshitzResult {
  double value = 0.0;             // J/m^2 (free energy) or Pa (pressure)
  double truncation_bound = 0.0;  // geometric bound on the dropped Matsubara tail
  double quadrature_error = 0.0;  // accumulated k-integral error estimates
  int terms = 0;                  // Matsubara terms evaluated (including n = 0)
  bool converged = false;
};

// Free energy per unit area,
//   F/A = (kB T / 2 pi) Sum'_n Int_0^inf k dk Sum_p ln(1 - r_p^2 e^{-2 q_n a}),
// with the n = 0 term at half weight.  Negative (binding).
LifshitzResult free_energy_per_area(const LifshitzConfig& cfg);

// Casimir pressure, the analytic a-derivative of the free energy integrand
// (no numerical differencing).  Negative = attractive.
LifshitzResult pressure(const LifshitzConfig& cfg);

// Characteristic real frequency ~ gamma (c/(a Wp))^2 of the thermally excited
// TE evanescent fields; drude model only.
double evanescent_scale(double separation, const DielectricModel& model);

}  // namespace jnforce
