#pragma once

#include <cstdint>

namespace jnforce {

enum class SdeScheme {
  exact,           // per-step matrix exponential of the linear drift, no dt bias
  euler_maruyama,  // validation fallback, O(dt) biased
};

struct SimulationConfig {
  double time_step = 0.05;  // units of L/R
  long steps = 100000;      // per ensemble member, including burn_in
  long burn_in = 1000;
  long ensemble = 16;
  std::uint64_t seed = 1;
  SdeScheme scheme = SdeScheme::exact;

  void validate() const;  // throws std::invalid_argument
};

struct CovarianceEstimate {
  double var_i1 = 0.0;
  double var_i2 = 0.0;
  double cov_i12 = 0.0;
  double standard_error = 0.0;  // on cov_i12
  long samples = 0;
};

// Classical stationary covariance of the coupled RL pair: kB*T K^{-1} with
// K = [[L, M], [M, L]].  Exact; standard_error = 0.
CovarianceEstimate equipartition_covariance(double inductance, double mutual,
                                            double thermal_energy);

// Time-domain simulation of
//   L di1 + M di2 + R i1 dt = dW1,   L di2 + M di1 + R i2 dt = dW2
// with independent white sources of intensity 2 kB T R (the classical limit
// of the Johnson-Nyquist spectrum; the intensity is pinned by requiring the
// stationary state to satisfy equipartition, which the tests assert).  The
// normal modes (i1 +- i2)/sqrt(2) decouple into scalar Ornstein-Uhlenbeck
// processes and are stepped exactly.  Ensemble members own independent
// generator streams (seed, member index), so the estimate is reproducible
// and merge-order independent.
CovarianceEstimate simulate_coupled_rl(double inductance, double mutual, double resistance,
                                       double thermal_energy, const SimulationConfig& cfg);

// Equipartition converted to the force normalization: H(0, m^2) = 1/(2(1-m^2)).
// Independent ground truth for h_factor at rho -> 0, kappa = 0.
double oracle_h_zero(double m_sq);

}  // namespace jnforce
