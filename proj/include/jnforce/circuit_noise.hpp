#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "jnforce/quadrature.hpp"

namespace jnforce {

// ---------------------------------------------------------------------------
// Reduced description of the two-antenna circuit.
//
//   rho   = omega_R / omega_T   with omega_R = R/L and omega_T = kB*T/hbar
//   m_sq  = (M/L)^2             mutual over self inductance, squared
//   kappa = omega_C / omega_R   with omega_C = 1/sqrt(L*C); 0 selects the RL
//                               model (no end-point capacitance)
// ---------------------------------------------------------------------------
struct ReducedParams {
  double rho = 0.0;
  double m_sq = 0.0;
  double kappa = 0.0;
};

// Thermal noise weight E(y) = y / (e^y - 1); E(0) = 1 by continuity.
double planck_weight(double y);
// dE/dy, needed when differentiating under the integral sign.
double planck_weight_derivative(double y);

// Dimensionless series impedance z(x) = 1 - i(x - kappa^2/x) at x = omega/omega_R.
// kappa = 0 gives the RL form 1 - ix; Re z = 1 always.
std::complex<double> reduced_impedance(double x, double kappa);

struct IntegralValue {
  double value = 0.0;
  double error = 0.0;       // quadrature error estimate
  long evaluations = 0;
  bool converged = false;
};

// Default spec for the circuit integrals: pure relative tolerance, since the
// low-temperature RLC free energy lives many orders below 1.
QuadratureSpec circuit_spec();

// H(rho, m^2, kappa) = (1/pi) Int_0^inf dx x E(x rho) Im[z(x)^2 + x^2 m^2]^{-1}.
// The force between the antennas is F = -kB*T*H * grad(m^2).  For kappa = 0
// the integrand is positive definite and H > 0 is asserted; with capacitance
// present H turns negative deep in the quantum regime (the interaction free
// energy scales like -t^6 there), so no sign is enforced.
IntegralValue h_factor(const ReducedParams& p, const QuadratureSpec& spec = circuit_spec());

// Interaction free energy over kB*T:
//   F/(kB T) = (1/pi) Int_0^inf (dx/x) E(x rho) Im log[1 + (x m / z(x))^2]
// The principal branch is valid everywhere (the argument never crosses the
// negative real axis); that is asserted at runtime.
IntegralValue free_energy_reduced(const ReducedParams& p, const QuadratureSpec& spec = circuit_spec());

// Interaction entropy over kB, by differentiating under the integral sign.
// resistance_log_slope is p = dlnR/dlnT at the evaluation temperature
// (0 constant R, 2 for impurity-free wires).  Requires rho > 0.
IntegralValue entropy_reduced(const ReducedParams& p, double resistance_log_slope,
                              const QuadratureSpec& spec = circuit_spec());

// rho -> 0 limit of h_factor at kappa = 0, eliminated to O(rho^2) from three
// evaluations (the finite-rho deviation is c*rho*(ln(1/rho) + k)).  This is
// the quadrature side of the equipartition cross-check.
double h_factor_zero_rho(double m_sq);

// ---------------------------------------------------------------------------
// Physical layer
// ---------------------------------------------------------------------------

enum class ResistanceKind { constant, power_law, tabulated };

class ResistanceLaw {
 public:
  static ResistanceLaw constant(double ohm);
  // R(T) = r_ref * (T/t_ref)^exponent; exponent defaults to the impurity-free
  // low-temperature value 2.
  static ResistanceLaw power_law(double r_ref, double t_ref, double exponent = 2.0);
  static ResistanceLaw tabulated(std::vector<double> temperature, std::vector<double> ohm);

  double at(double temperature) const;
  // dlnR/dlnT; numeric secant for tabulated data.
  double log_slope(double temperature) const;
  ResistanceKind kind() const { return kind_; }
  bool analytic_slope() const { return kind_ != ResistanceKind::tabulated; }

 private:
  ResistanceLaw() = default;
  ResistanceKind kind_ = ResistanceKind::constant;
  double r_ref_ = 0.0;
  double t_ref_ = 1.0;
  double exponent_ = 0.0;
  std::vector<double> table_t_;
  std::vector<double> table_r_;
};

struct AntennaPair {
  double inductance = 0.0;               // henry
  double coupling = 0.0;                 // m = M/L, in [0, 1)
  ResistanceLaw resistance = ResistanceLaw::constant(0.0);
  std::optional<double> capacitance;     // farad; absent = RL model

  void validate() const;                 // throws std::invalid_argument
  bool is_rlc() const { return capacitance.has_value(); }
};

ReducedParams reduce(const AntennaPair& pair, double temperature);

struct EntropyValue {
  double value = 0.0;            // J/K
  double error = 0.0;
  // set when the resistance law has no analytic temperature derivative and a
  // numerical slope was used instead
  bool numeric_slope_warning = false;
};

// kB*T*H in joule.  Strictly dissipationless pairs (R(T) == 0) sit on a
// separate branch and give exactly zero: without resistance there is no
// Johnson-Nyquist noise.
double interaction_force_coefficient(const AntennaPair& pair, double temperature);
double interaction_free_energy(const AntennaPair& pair, double temperature);  // J
EntropyValue interaction_entropy(const AntennaPair& pair, double temperature);

// Free energy of one isolated RLC antenna, kB*T*log[1 - exp(-hbar wC/(kB T))].
double self_free_energy(double omega_c, double temperature);
// -d(self free energy)/dT, the harmonic-oscillator entropy (>= 0).
double self_entropy(double omega_c, double temperature);

// Interaction entropy plus both self entropies; RLC pairs only.
EntropyValue total_entropy(const AntennaPair& pair, double temperature);

enum class CircuitKind { rl, rlc };

// R -> 0 limit of the force coefficient.  RL: kB*T/(2(1-m^2)) (the noise
// survives the limit).  RLC in the quantum regime: 0, approached linearly in
// omega_R.
double zero_resistance_force_coefficient(double m_sq, CircuitKind kind, double temperature);

// Closed-form low-temperature RLC asymptote, in joule:
//   F = -(16 pi^5 m^2 / 63) (kB T/(hbar wC))^6 hbar wR
double low_temperature_asymptote(double m, double omega_r, double omega_c, double temperature);
// Same in units of hbar*omega_C with t = kB T/(hbar wC) and eta = wR/wC.
double low_temperature_asymptote_reduced(double m, double eta, double t);

// One point of a temperature scan in reduced units.
struct ThermoPoint {
  double temperature = 0.0;        // reduced t = kB T/(hbar wC)
  double free_energy = 0.0;        // F / (hbar wC)
  double entropy = 0.0;            // S_interaction / kB
  double force_coefficient = 0.0;  // kB T H / (hbar wC)
  double quadrature_error = 0.0;
};

// The published free-energy curve: m = 0.8, omega_R(t) = coeff * t^2 * omega_C.
std::vector<ThermoPoint> figure1_curve(std::span<const double> t_grid,
                                       double m = 0.8, double omega_r_coefficient = 5.0);

}  // namespace jnforce
