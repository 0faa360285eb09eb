#include "jnforce/circuit_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jnforce/constants.hpp"

namespace jnforce {

using constants::hbar;
using constants::k_boltzmann;
using constants::pi;

double planck_weight(double y) {
  if (y < 0.0) throw std::domain_error("planck_weight: y must be >= 0");
  if (y == 0.0) return 1.0;
  const double d = std::expm1(y);
  if (!std::isfinite(d)) return 0.0;  // y beyond ~709, weight underflows
  return y / d;
}

double planck_weight_derivative(double y) {
  if (y < 0.0) throw std::domain_error("planck_weight_derivative: y must be >= 0");
  if (y < 1e-2) {
    // E'(y) = -1/2 + y/6 - y^3/180 + ...
    return -0.5 + y / 6.0 - y * y * y / 180.0;
  }
  if (y > 40.0) {
    // (1 - y) e^{-y} up to O(e^{-2y})
    return (1.0 - y) * std::exp(-y);
  }
  const double em = std::expm1(y);
  return (em - y * std::exp(y)) / (em * em);
}

std::complex<double> reduced_impedance(double x, double kappa) {
  if (!(x > 0.0)) throw std::domain_error("reduced_impedance: x must be > 0");
  if (kappa < 0.0) throw std::domain_error("reduced_impedance: kappa must be >= 0");
  const double reactance = (kappa == 0.0) ? x : x - kappa * kappa / x;
  return {1.0, -reactance};
}

QuadratureSpec circuit_spec() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 0.0;
  spec.max_subdivisions = 6000;
  return spec;
}

namespace {

void validate_reduced(const ReducedParams& p) {
  if (!(p.rho >= 0.0) || !(p.m_sq >= 0.0) || p.m_sq >= 1.0 || !(p.kappa >= 0.0)) {
    throw std::invalid_argument("ReducedParams: require rho >= 0, 0 <= m^2 < 1, kappa >= 0");
  }
}

std::vector<double> circuit_breakpoints(const ReducedParams& p) {
  std::vector<double> brk = {1.0};
  if (p.kappa > 0.0) {
    const double m = std::sqrt(p.m_sq);
    brk.push_back(p.kappa);
    // Coupled-mode resonances at kappa/sqrt(1 +- m).  Their Lorentzian width
    // in x is 1/(2(1 -+ m)) independent of kappa, so once kappa is large the
    // peaks are extremely narrow relative to their position and must be
    // bracketed, not just marked: a boundary exactly at the peak center puts
    // the nearest rule nodes far outside the line and the estimator never
    // sees the mass.
    auto bracket = [&brk](double center, double width) {
      brk.push_back(center);
      for (double k : {1.0, 8.0, 64.0}) {
        if (center - k * width > 0.0) brk.push_back(center - k * width);
        brk.push_back(center + k * width);
      }
    };
    bracket(p.kappa / std::sqrt(1.0 + m), 1.0 / (2.0 * (1.0 + m)));
    if (m < 1.0) bracket(p.kappa / std::sqrt(1.0 - m), 1.0 / (2.0 * (1.0 - m)));
  }
  if (p.rho > 0.0) brk.push_back(1.0 / p.rho);  // thermal cutoff knee
  return brk;
}

// The determinant z^2 + x^2 m^2 factors over the coupled modes,
//   (1 - i b-)(1 - i b+),  b-+ = W -+ m x,  W = x - kappa^2/x,
// and every kernel below is evaluated through the factors: the naive form
// 1 - W^2 + x^2 m^2 cancels catastrophically near the modes once kappa is
// large (W^2 and x^2 m^2 meet at ~kappa^2), while b-+ stay fully accurate.
struct ModeFactors {
  double w;        // reactance x - kappa^2/x
  double b_minus;  // w - m x
  double b_plus;   // w + m x

  ModeFactors(double x, double m, double kappa) {
    w = (kappa == 0.0) ? x : x - kappa * kappa / x;
    b_minus = w - m * x;
    b_plus = w + m * x;
  }
};

// Im [z^2 + x^2 m^2]^{-1}
double im_inverse_determinant(double x, double m, double kappa) {
  const ModeFactors f(x, m, kappa);
  return (f.b_minus + f.b_plus) /
         ((1.0 + f.b_minus * f.b_minus) * (1.0 + f.b_plus * f.b_plus));
}

// Im log[1 + (x m / z)^2] on the principal branch.  The argument never
// touches the negative real axis (its imaginary part vanishes only at the
// series resonance x = kappa, where the value is 1 + x^2 m^2 > 0), so no
// unwinding is needed; that is asserted here.
//
// Two evaluation branches: away from the coupled-mode band (|w|^2 < 1/4) the
// direct complex arg is exact relative to the tiny phase; inside and near
// the band the phase is O(1) and the mode-factored atan sum
//   2 atan(W) - atan(b-) - atan(b+)
// avoids the determinant cancellation.  Both agree to ~1e-15 at the switch.
double branch_checked_phase(double x, double m, const ReducedParams& p) {
  const ModeFactors f(x, m, p.kappa);
  const double mx = m * x;
  const double wsq = mx * mx / (1.0 + f.w * f.w);
  double phase;
  if (wsq < 0.25) {
    const std::complex<double> z(1.0, -f.w);
    const std::complex<double> w = mx / z;
    phase = std::arg(1.0 + w * w);
  } else {
    phase = 2.0 * std::atan(f.w) - std::atan(f.b_minus) - std::atan(f.b_plus);
  }
  if (!(std::abs(phase) < pi)) {
    throw std::runtime_error("complex-log branch violation in the free-energy integrand");
  }
  return phase;
}

// d(phase)/d(kappa) = [2/(1+W^2) - 1/(1+b-^2) - 1/(1+b+^2)] * dW/dkappa
double phase_kappa_derivative(double x, double m, const ReducedParams& p) {
  const ModeFactors f(x, m, p.kappa);
  const double dw_dkappa = -2.0 * p.kappa / x;
  return (2.0 / (1.0 + f.w * f.w) - 1.0 / (1.0 + f.b_minus * f.b_minus) -
          1.0 / (1.0 + f.b_plus * f.b_plus)) *
         dw_dkappa;
}

}  // namespace

IntegralValue h_factor(const ReducedParams& p, const QuadratureSpec& spec) {
  validate_reduced(p);
  const double m = std::sqrt(p.m_sq);
  auto integrand = [&p, m](double x) {
    return x * planck_weight(x * p.rho) * im_inverse_determinant(x, m, p.kappa);
  };
  const auto brk = circuit_breakpoints(p);
  QuadratureResult q = integrate_semi_infinite(integrand, spec, brk);
  IntegralValue out{q.value / pi, q.error_estimate / pi, q.evaluations, q.converged};
  if (p.kappa == 0.0 && !(out.value > 0.0)) {
    throw std::runtime_error("h_factor: RL integrand must be positive definite");
  }
  return out;
}

IntegralValue free_energy_reduced(const ReducedParams& p, const QuadratureSpec& spec) {
  validate_reduced(p);
  if (p.m_sq == 0.0) return {0.0, 0.0, 0, true};
  const double m = std::sqrt(p.m_sq);
  auto integrand = [&p, m](double x) {
    return planck_weight(x * p.rho) * branch_checked_phase(x, m, p) / x;
  };
  const auto brk = circuit_breakpoints(p);
  QuadratureResult q = integrate_semi_infinite(integrand, spec, brk);
  return {q.value / pi, q.error_estimate / pi, q.evaluations, q.converged};
}

IntegralValue entropy_reduced(const ReducedParams& p, double resistance_log_slope,
                              const QuadratureSpec& spec) {
  validate_reduced(p);
  if (!(p.rho > 0.0)) {
    throw std::invalid_argument("entropy_reduced: requires rho > 0 (T > 0 and R > 0)");
  }
  const double m = std::sqrt(p.m_sq);
  const double slope = resistance_log_slope;
  const auto brk = circuit_breakpoints(p);

  IntegralValue fe = free_energy_reduced(p, spec);

  // d(F/kBT)/drho enters through E(x rho):  I1 = Int dx E'(x rho) phi(x)
  auto d_rho = [&p, m](double x) {
    return planck_weight_derivative(x * p.rho) * branch_checked_phase(x, m, p);
  };
  QuadratureResult q1 = integrate_semi_infinite(d_rho, spec, brk);

  // S/kB = -F/kBT - (p-1) rho I1/pi + p kappa I2/pi, from T drho/dT = (p-1) rho
  // and T dkappa/dT = -p kappa for a power-law resistance.
  double value = -fe.value - (slope - 1.0) * p.rho * q1.value / pi;
  double error = fe.error + std::abs(slope - 1.0) * p.rho * q1.error_estimate / pi;
  bool converged = fe.converged && q1.converged;
  long evals = fe.evaluations + q1.evaluations;

  if (p.kappa > 0.0 && slope != 0.0) {
    // I2 = Int (dx/x) E(x rho) d(phi)/dkappa
    auto d_kappa = [&p, m](double x) {
      return planck_weight(x * p.rho) * phase_kappa_derivative(x, m, p) / x;
    };
    QuadratureResult q2 = integrate_semi_infinite(d_kappa, spec, brk);
    value += slope * p.kappa * q2.value / pi;
    error += std::abs(slope) * p.kappa * q2.error_estimate / pi;
    converged = converged && q2.converged;
    evals += q2.evaluations;
  }
  return {value, error, evals, converged};
}

double h_factor_zero_rho(double m_sq) {
  // H(rho) = H0 - c rho (ln(1/rho) + k) + O(rho^2); three evaluations on a
  // geometric rho ladder eliminate both unknown tail coefficients.
  const double r1 = 1e-5, r2 = 1e-6, r3 = 1e-7;
  const double h1 = h_factor({r1, m_sq, 0.0}).value;
  const double h2 = h_factor({r2, m_sq, 0.0}).value;
  const double h3 = h_factor({r3, m_sq, 0.0}).value;
  // Model h(r) = h0 + a*r*ln(r) + b*r; solve the 3x3 system by elimination.
  auto solve = [&](double ra, double ha, double rb, double hb, double rc, double hc) {
    const double la = ra * std::log(ra), lb = rb * std::log(rb), lc = rc * std::log(rc);
    // eliminate b
    const double p1 = (ha - hb) * (rb - rc) - (hb - hc) * (ra - rb);
    const double p2 = (la - lb) * (rb - rc) - (lb - lc) * (ra - rb);
    const double a = p1 / p2;
    const double b = ((ha - hb) - a * (la - lb)) / (ra - rb);
    return ha - a * la - b * ra;
  };
  return solve(r1, h1, r2, h2, r3, h3);
}

// ---------------------------------------------------------------------------
// Resistance laws
// ---------------------------------------------------------------------------

ResistanceLaw ResistanceLaw::constant(double ohm) {
  if (ohm < 0.0) throw std::invalid_argument("ResistanceLaw: R must be >= 0");
  ResistanceLaw law;
  law.kind_ = ResistanceKind::constant;
  law.r_ref_ = ohm;
  return law;
}

ResistanceLaw ResistanceLaw::power_law(double r_ref, double t_ref, double exponent) {
  if (r_ref < 0.0 || !(t_ref > 0.0)) {
    throw std::invalid_argument("ResistanceLaw: require r_ref >= 0 and t_ref > 0");
  }
  ResistanceLaw law;
  law.kind_ = ResistanceKind::power_law;
  law.r_ref_ = r_ref;
  law.t_ref_ = t_ref;
  law.exponent_ = exponent;
  return law;
}

ResistanceLaw ResistanceLaw::tabulated(std::vector<double> temperature, std::vector<double> ohm) {
  if (temperature.size() != ohm.size() || temperature.size() < 2) {
    throw std::invalid_argument("ResistanceLaw: table needs >= 2 matching samples");
  }
  if (!std::is_sorted(temperature.begin(), temperature.end())) {
    throw std::invalid_argument("ResistanceLaw: table temperatures must be increasing");
  }
  for (double r : ohm) {
    if (r < 0.0) throw std::invalid_argument("ResistanceLaw: R must be >= 0");
  }
  ResistanceLaw law;
  law.kind_ = ResistanceKind::tabulated;
  law.table_t_ = std::move(temperature);
  law.table_r_ = std::move(ohm);
  return law;
}

double ResistanceLaw::at(double temperature) const {
  switch (kind_) {
    case ResistanceKind::constant:
      return r_ref_;
    case ResistanceKind::power_law:
      return r_ref_ * std::pow(temperature / t_ref_, exponent_);
    case ResistanceKind::tabulated: {
      const auto& ts = table_t_;
      if (temperature <= ts.front()) return table_r_.front();
      if (temperature >= ts.back()) return table_r_.back();
      const auto it = std::upper_bound(ts.begin(), ts.end(), temperature);
      const std::size_t i = static_cast<std::size_t>(it - ts.begin());
      const double w = (temperature - ts[i - 1]) / (ts[i] - ts[i - 1]);
      return table_r_[i - 1] + w * (table_r_[i] - table_r_[i - 1]);
    }
  }
  return 0.0;
}

double ResistanceLaw::log_slope(double temperature) const {
  switch (kind_) {
    case ResistanceKind::constant:
      return 0.0;
    case ResistanceKind::power_law:
      return exponent_;
    case ResistanceKind::tabulated: {
      const double h = 1e-4 * temperature;
      const double rp = at(temperature + h);
      const double rm = at(temperature - h);
      const double r0 = at(temperature);
      if (r0 <= 0.0) return 0.0;
      return temperature * (rp - rm) / (2.0 * h * r0);
    }
  }
  return 0.0;
}

void AntennaPair::validate() const {
  if (!(inductance > 0.0)) throw std::invalid_argument("AntennaPair: L must be > 0");
  if (!(coupling >= 0.0) || coupling >= 1.0) {
    throw std::invalid_argument("AntennaPair: passivity requires 0 <= m < 1");
  }
  if (capacitance && !(*capacitance > 0.0)) {
    throw std::invalid_argument("AntennaPair: C must be > 0 when present");
  }
}

ReducedParams reduce(const AntennaPair& pair, double temperature) {
  pair.validate();
  if (!(temperature > 0.0)) throw std::invalid_argument("reduce: T must be > 0");
  const double r = pair.resistance.at(temperature);
  if (!(r > 0.0)) {
    throw std::invalid_argument("reduce: dissipationless pair has no reduced form");
  }
  ReducedParams p;
  p.m_sq = pair.coupling * pair.coupling;
  const double omega_r = r / pair.inductance;
  p.rho = hbar * omega_r / (k_boltzmann * temperature);
  if (pair.capacitance) {
    const double omega_c = 1.0 / std::sqrt(pair.inductance * *pair.capacitance);
    p.kappa = omega_c / omega_r;
  }
  return p;
}

double interaction_force_coefficient(const AntennaPair& pair, double temperature) {
  pair.validate();
  if (!(temperature > 0.0)) throw std::invalid_argument("T must be > 0");
  if (pair.resistance.at(temperature) == 0.0) return 0.0;  // no noise without dissipation
  return k_boltzmann * temperature * h_factor(reduce(pair, temperature)).value;
}

double interaction_free_energy(const AntennaPair& pair, double temperature) {
  pair.validate();
  if (!(temperature > 0.0)) throw std::invalid_argument("T must be > 0");
  if (pair.resistance.at(temperature) == 0.0) return 0.0;
  return k_boltzmann * temperature * free_energy_reduced(reduce(pair, temperature)).value;
}

EntropyValue interaction_entropy(const AntennaPair& pair, double temperature) {
  pair.validate();
  if (!(temperature > 0.0)) throw std::invalid_argument("T must be > 0");
  EntropyValue out;
  if (pair.resistance.at(temperature) == 0.0) return out;
  const ReducedParams p = reduce(pair, temperature);
  const double slope = pair.resistance.log_slope(temperature);
  const IntegralValue s = entropy_reduced(p, slope);
  out.value = k_boltzmann * s.value;
  out.error = k_boltzmann * s.error;
  out.numeric_slope_warning = !pair.resistance.analytic_slope();
  return out;
}

double self_free_energy(double omega_c, double temperature) {
  if (!(omega_c > 0.0)) throw std::invalid_argument("self_free_energy: omega_c must be > 0");
  if (temperature < 0.0) throw std::invalid_argument("self_free_energy: T must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double y = hbar * omega_c / (k_boltzmann * temperature);
  return k_boltzmann * temperature * std::log1p(-std::exp(-y));
}

double self_entropy(double omega_c, double temperature) {
  if (!(omega_c > 0.0)) throw std::invalid_argument("self_entropy: omega_c must be > 0");
  if (temperature < 0.0) throw std::invalid_argument("self_entropy: T must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double y = hbar * omega_c / (k_boltzmann * temperature);
  const double ey = std::exp(-y);
  if (ey == 0.0) return 0.0;
  // standard oscillator entropy: S/kB = -ln(1-e^-y) + y/(e^y - 1)
  return k_boltzmann * (-std::log1p(-ey) + y * ey / (1.0 - ey));
}

EntropyValue total_entropy(const AntennaPair& pair, double temperature) {
  pair.validate();
  if (!pair.capacitance) {
    throw std::invalid_argument("total_entropy: defined for the RLC model only");
  }
  EntropyValue s = interaction_entropy(pair, temperature);
  const double omega_c = 1.0 / std::sqrt(pair.inductance * *pair.capacitance);
  s.value += 2.0 * self_entropy(omega_c, temperature);
  return s;
}

double zero_resistance_force_coefficient(double m_sq, CircuitKind kind, double temperature) {
  if (!(m_sq >= 0.0) || m_sq >= 1.0) {
    throw std::domain_error("zero_resistance_force_coefficient: require 0 <= m^2 < 1");
  }
  if (!(temperature > 0.0)) throw std::invalid_argument("T must be > 0");
  if (kind == CircuitKind::rl) {
    return k_boltzmann * temperature * 0.5 / (1.0 - m_sq);
  }
  // With end-point capacitance the coefficient goes to zero linearly in
  // omega_R (quantum regime kB T << hbar wC).
  return 0.0;
}

double low_temperature_asymptote_reduced(double m, double eta, double t) {
  const double c = 16.0 * std::pow(pi, 5) / 63.0;
  return -c * m * m * std::pow(t, 6) * eta;
}

double low_temperature_asymptote(double m, double omega_r, double omega_c, double temperature) {
  if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be > 0");
  const double t = k_boltzmann * temperature / (hbar * omega_c);
  return hbar * omega_c * low_temperature_asymptote_reduced(m, omega_r / omega_c, t);
}

std::vector<ThermoPoint> figure1_curve(std::span<const double> t_grid, double m,
                                       double omega_r_coefficient) {
  if (!(m >= 0.0) || m >= 1.0) throw std::invalid_argument("figure1_curve: require 0 <= m < 1");
  std::vector<ThermoPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::invalid_argument("figure1_curve: grid values must be > 0");
    const double eta = omega_r_coefficient * t * t;  // omega_R / omega_C
    ReducedParams p;
    p.m_sq = m * m;
    p.rho = eta / t;
    p.kappa = 1.0 / eta;
    const IntegralValue fe = free_energy_reduced(p);
    const IntegralValue s = entropy_reduced(p, 2.0);
    const IntegralValue h = h_factor(p);
    ThermoPoint pt;
    pt.temperature = t;
    pt.free_energy = t * fe.value;  // (kB T/hbar wC) * F/(kB T)
    pt.entropy = s.value;
    pt.force_coefficient = t * h.value;
    pt.quadrature_error = t * fe.error + s.error + t * h.error;
    out.push_back(pt);
  }
  return out;
}

}  // namespace jnforce
