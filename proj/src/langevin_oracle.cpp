#include "jnforce/langevin_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jnforce/constants.hpp"
#include "jnforce/rng.hpp"

namespace jnforce {

double Xoshiro256pp::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open0();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * constants::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

void SimulationConfig::validate() const {
  if (!(time_step > 0.0)) throw std::invalid_argument("SimulationConfig: dt must be > 0");
  if (!(time_step < 0.1)) {
    throw std::invalid_argument("SimulationConfig: dt must be < 0.1 L/R for a usable sample rate");
  }
  if (steps <= burn_in || burn_in < 0) {
    throw std::invalid_argument("SimulationConfig: require steps > burn_in >= 0");
  }
  if (ensemble < 1) throw std::invalid_argument("SimulationConfig: ensemble must be >= 1");
}

CovarianceEstimate equipartition_covariance(double inductance, double mutual,
                                            double thermal_energy) {
  if (!(inductance > 0.0)) throw std::invalid_argument("equipartition: L must be > 0");
  if (!(std::abs(mutual) < inductance)) {
    throw std::invalid_argument("equipartition: passivity requires |M| < L");
  }
  const double det = inductance * inductance - mutual * mutual;
  CovarianceEstimate est;
  est.var_i1 = thermal_energy * inductance / det;
  est.var_i2 = est.var_i1;
  est.cov_i12 = -thermal_energy * mutual / det;
  est.standard_error = 0.0;
  est.samples = 0;
  return est;
}

namespace {

struct MemberMoments {
  double m11 = 0.0, m22 = 0.0, m12 = 0.0;
};

// Trajectory in normal-mode coordinates s = (i1+i2)/sqrt2, d = (i1-i2)/sqrt2;
// each mode is a scalar Ornstein-Uhlenbeck process.
struct ModeStepper {
  double as, ad, bs, bd;            // exact one-step factors
  double theta_s_dt, theta_d_dt;    // Euler-Maruyama drift factors
  double sigma_s, sigma_d;          // Euler-Maruyama noise amplitudes
  SdeScheme scheme;
  double s = 0.0, d = 0.0;

  ModeStepper(double inductance, double mutual, double resistance, double thermal_energy,
              const SimulationConfig& cfg) {
    const double ls = inductance + mutual;
    const double ld = inductance - mutual;
    const double dt = cfg.time_step * inductance / resistance;  // physical step
    as = std::exp(-resistance / ls * dt);
    ad = std::exp(-resistance / ld * dt);
    bs = std::sqrt(thermal_energy / ls * (1.0 - as * as));
    bd = std::sqrt(thermal_energy / ld * (1.0 - ad * ad));
    theta_s_dt = resistance / ls * dt;
    theta_d_dt = resistance / ld * dt;
    // white sources of intensity 2 kB T R, projected on each mode
    sigma_s = std::sqrt(2.0 * thermal_energy * resistance * dt) / ls;
    sigma_d = std::sqrt(2.0 * thermal_energy * resistance * dt) / ld;
    scheme = cfg.scheme;
  }

  void step(Xoshiro256pp& rng) {
    if (scheme == SdeScheme::exact) {
      s = as * s + bs * rng.gaussian();
      d = ad * d + bd * rng.gaussian();
    } else {
      s += -theta_s_dt * s + sigma_s * rng.gaussian();
      d += -theta_d_dt * d + sigma_d * rng.gaussian();
    }
  }

  void accumulate(MemberMoments& acc) const {
    const double i1 = (s + d) * M_SQRT1_2;
    const double i2 = (s - d) * M_SQRT1_2;
    acc.m11 += i1 * i1;
    acc.m22 += i2 * i2;
    acc.m12 += i1 * i2;
  }
};

void finish(MemberMoments& acc, long counted) {
  acc.m11 /= static_cast<double>(counted);
  acc.m22 /= static_cast<double>(counted);
  acc.m12 /= static_cast<double>(counted);
}

}  // namespace

CovarianceEstimate simulate_coupled_rl(double inductance, double mutual, double resistance,
                                       double thermal_energy, const SimulationConfig& cfg) {
  cfg.validate();
  if (!(inductance > 0.0)) throw std::invalid_argument("simulate: L must be > 0");
  if (!(std::abs(mutual) < inductance)) {
    throw std::invalid_argument("simulate: passivity requires |M| < L");
  }
  if (!(resistance > 0.0)) {
    throw std::invalid_argument("simulate: R must be > 0 (dissipationless circuits carry no noise)");
  }
  if (cfg.scheme == SdeScheme::euler_maruyama) {
    const double theta_max_dt = cfg.time_step * inductance / (inductance - std::abs(mutual));
    if (theta_max_dt >= 2.0) {
      throw std::invalid_argument("simulate: Euler-Maruyama unstable at this dt");
    }
  }

  std::vector<MemberMoments> members;
  if (cfg.ensemble >= 2) {
    members.reserve(static_cast<std::size_t>(cfg.ensemble));
    for (long k = 0; k < cfg.ensemble; ++k) {
      Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(k));
      ModeStepper mode(inductance, mutual, resistance, thermal_energy, cfg);
      MemberMoments acc;
      for (long step = 0; step < cfg.steps; ++step) {
        mode.step(rng);
        if (step >= cfg.burn_in) mode.accumulate(acc);
      }
      finish(acc, cfg.steps - cfg.burn_in);
      members.push_back(acc);
    }
  } else {
    // single trajectory: standard errors from 16 contiguous batch means
    constexpr int batches = 16;
    const long per = (cfg.steps - cfg.burn_in) / batches;
    if (per < 2) throw std::invalid_argument("simulate: too few steps for batch statistics");
    Xoshiro256pp rng(cfg.seed, 0);
    ModeStepper mode(inductance, mutual, resistance, thermal_energy, cfg);
    for (long step = 0; step < cfg.burn_in; ++step) mode.step(rng);
    for (int b = 0; b < batches; ++b) {
      MemberMoments acc;
      for (long step = 0; step < per; ++step) {
        mode.step(rng);
        mode.accumulate(acc);
      }
      finish(acc, per);
      members.push_back(acc);
    }
  }

  CovarianceEstimate est;
  const double n = static_cast<double>(members.size());
  for (const auto& m : members) {
    est.var_i1 += m.m11;
    est.var_i2 += m.m22;
    est.cov_i12 += m.m12;
  }
  est.var_i1 /= n;
  est.var_i2 /= n;
  est.cov_i12 /= n;
  double ss = 0.0;
  for (const auto& m : members) {
    const double dlt = m.m12 - est.cov_i12;
    ss += dlt * dlt;
  }
  est.standard_error = std::sqrt(ss / (n * (n - 1.0)));
  est.samples = (cfg.steps - cfg.burn_in) * cfg.ensemble;
  return est;
}

double oracle_h_zero(double m_sq) {
  if (!(m_sq >= 0.0) || m_sq >= 1.0) {
    throw std::domain_error("oracle_h_zero: require 0 <= m^2 < 1");
  }
  return 0.5 / (1.0 - m_sq);
}

}  // namespace jnforce
