// Physics acceptance suite: one check per line, honest measured numbers.
// Exit code is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <string>
#include <vector>

#include "jnforce/antenna_geometry.hpp"
#include "jnforce/circuit_noise.hpp"
#include "jnforce/constants.hpp"
#include "jnforce/langevin_oracle.hpp"
#include "jnforce/lifshitz.hpp"

using namespace jnforce;
using namespace jnforce::constants;

namespace {

int failures = 0;

class Criterion {
 public:
  explicit Criterion(int index, std::string title)
      : index_(index), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void finish(bool pass, const std::string& detail) {
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    std::printf("[%2d] %s %s: %s (%.2f s)\n", index_, pass ? "PASS" : "FAIL", title_.c_str(),
                detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!pass) ++failures;
  }

 private:
  int index_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

void criterion_1_equipartition_link() {
  Criterion c(1, "equipartition link H(rho=1e-6) vs 1/(2(1-m^2))");
  const double tol = 1e-5;
  bool pass = true;
  double worst = 0.0;
  std::string detail;
  for (double m2 : {0.0, 0.36, 0.64, 0.9}) {
    const double h = h_factor({1e-6, m2, 0.0}).value;
    const double diff = std::fabs(h - 0.5 / (1.0 - m2));
    worst = std::max(worst, diff);
    pass = pass && diff < tol;
    detail += fmt("m2=%.2f:%.2e ", m2, diff);
  }
  c.finish(pass, detail + fmt("max=%.3e tol=%.0e", worst, tol));
}

void criterion_2_classical_free_energy() {
  Criterion c(2, "classical RL free energy vs -(kBT/2)ln(1-m^2) at rho=1e-6");
  const double tol = 1e-5;
  // physical pair tuned so rho(T) = 1e-6 at T = 1 K
  const double L = 1e-7, T = 1.0;
  const double R = 1e-6 * L * k_boltzmann * T / hbar;
  bool pass = true;
  std::string detail;
  for (double m2 : {0.0, 0.36, 0.64, 0.9}) {
    AntennaPair pair;
    pair.inductance = L;
    pair.coupling = std::sqrt(m2);
    pair.resistance = ResistanceLaw::constant(R);
    const double f = interaction_free_energy(pair, T);
    const double ref = -0.5 * k_boltzmann * T * std::log(1.0 - m2);
    const double rel = std::fabs(f - ref) / (ref != 0.0 ? std::fabs(ref) : 1.0);
    pass = pass && rel < tol;
    detail += fmt("m2=%.2f:%.2e ", m2, rel);
  }
  c.finish(pass, detail + fmt("tol=%.0e", tol));
}

void criterion_3_nernst_violation() {
  Criterion c(3, "RL Nernst violation: S -> (kB/2)ln(1-m^2) < 0 with R ~ T^2");
  bool pass = true;
  std::string detail;
  std::vector<double> limits;
  for (double m2 : {0.36, 0.64}) {
    const double limit = 0.5 * std::log(1.0 - m2);  // in kB units
    limits.push_back(limit);
    double prev_gap = 1e9;
    bool shrinking = true;
    double final_gap = 1e9;
    for (double rho : {1e-3, 1e-4, 1e-5, 1e-6}) {  // rho tracks T for R ~ T^2
      const double s = entropy_reduced({rho, m2, 0.0}, 2.0).value;
      final_gap = std::fabs(s - limit);
      shrinking = shrinking && final_gap < prev_gap;
      prev_gap = final_gap;
    }
    pass = pass && shrinking && final_gap < 1e-4 && limit < 0.0;
    detail += fmt("m2=%.2f gap=%.2e ", m2, final_gap);
  }
  pass = pass && std::fabs(limits[0] - limits[1]) > 0.1;  // limit depends on separation
  c.finish(pass, detail + "tol=1e-04, limits distinct");
}

void criterion_4_rlc_asymptote() {
  Criterion c(4, "RLC free energy vs -(16pi^5 m^2/63) t^6 hbar wR (m=0.8, wR=5t^2 wC)");
  const double tol = 0.05;
  bool pass = true;
  std::string detail;
  double prev_rel = 1e9;
  bool improving = true;
  for (double t : {0.1, 0.05, 0.02}) {  // decreasing, to test "improving"
    const double m = 0.8, eta = 5.0 * t * t;
    const double f = free_energy_reduced({eta / t, m * m, 1.0 / eta}).value;
    const double ref = low_temperature_asymptote_reduced(m, eta, t) / t;  // per kB T
    const double rel = std::fabs(f - ref) / std::fabs(ref);
    improving = improving && rel < prev_rel;
    prev_rel = rel;
    pass = pass && rel < tol;
    detail += fmt("t=%.2f:%.3g ", t, rel);
  }
  pass = pass && improving;
  c.finish(pass, detail + fmt("tol=%.2f improving=%s", tol, improving ? "yes" : "no"));
}

void criterion_5_figure1_properties() {
  Criterion c(5, "figure-1 curve: F->0, positive-slope interval, total entropy >= 0");
  std::vector<double> grid;
  for (double t = 0.02; t <= 2.0 + 1e-12; t += 0.03) grid.push_back(t);
  const auto pts = figure1_curve(grid, 0.8, 5.0);

  const bool to_zero = std::fabs(pts.front().free_energy) < 1e-8;
  bool has_positive_slope = false;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].free_energy > pts[i - 1].free_energy) has_positive_slope = true;
  }
  double min_total_entropy = 1e300;
  for (const auto& p : pts) {
    const double y = 1.0 / p.temperature;
    const double s_self = -std::log1p(-std::exp(-y)) + y / std::expm1(y);
    min_total_entropy = std::min(min_total_entropy, p.entropy + 2.0 * s_self);
  }
  const bool entropy_ok = min_total_entropy >= -1e-10;
  c.finish(to_zero && has_positive_slope && entropy_ok,
           fmt("|F(0.02)|=%.1e, positive slope=%s, min S_total=%.2e kB",
               std::fabs(pts.front().free_energy), has_positive_slope ? "yes" : "no",
               min_total_entropy));
}

void criterion_6_zero_resistance() {
  Criterion c(6, "zero-resistance limits: RLC coefficient linear to 0, RL finite");
  const double t = 0.1, m2 = 0.64;
  std::vector<double> hs;
  for (double eta : {1e-2, 1e-3, 1e-4}) {
    hs.push_back(h_factor({eta / t, m2, 1.0 / eta}).value);
  }
  const double r1 = hs[0] / hs[1];
  const double r2 = hs[1] / hs[2];
  const bool rlc_linear = std::fabs(r1 - 10.0) <= 0.5 && std::fabs(r2 - 10.0) <= 0.5;

  // RL branch: same resistance ladder, no capacitance; deviations from the
  // equipartition limit must shrink and end close to it
  const double h0 = 0.5 / (1.0 - m2);
  double prev = 1e300;
  bool rl_converges = true;
  double last = 0.0;
  for (double eta : {1e-2, 1e-3, 1e-4}) {
    const double h = h_factor({eta / t, m2, 0.0}).value;
    last = std::fabs(h - h0);
    rl_converges = rl_converges && last < prev;
    prev = last;
  }
  rl_converges = rl_converges && last < 0.02 * h0;
  c.finish(rlc_linear && rl_converges,
           fmt("RLC ratios %.3f, %.3f (want 10 +- 0.5); RL gap %.2e (%.1f%% of limit)", r1, r2,
               last, 100.0 * last / h0));
}

void criterion_7_langevin_oracle() {
  Criterion c(7, "langevin oracle: <i1 i2> within 3 sigma, bytes reproducible");
  SimulationConfig cfg;
  cfg.time_step = 0.05;
  cfg.steps = 125000;
  cfg.burn_in = 4000;
  cfg.ensemble = 84;  // ensemble * steps ~ 1e7
  cfg.seed = 20260808;
  bool pass = true;
  std::string detail;
  for (double m : {0.0, 0.3, 0.8}) {
    const auto est = simulate_coupled_rl(1.0, m, 1.0, 1.0, cfg);
    const double exact = -m / (1.0 - m * m);  // kB T = 1, L = 1
    const double dev = std::fabs(est.cov_i12 - exact);
    const double sigmas = dev / est.standard_error;
    pass = pass && sigmas <= 3.0;
    detail += fmt("m=%.1f:%.2fsig ", m, sigmas);
  }
  SimulationConfig small = cfg;
  small.steps = 20000;
  small.ensemble = 8;
  const auto a = simulate_coupled_rl(1.0, 0.3, 1.0, 1.0, small);
  const auto b = simulate_coupled_rl(1.0, 0.3, 1.0, 1.0, small);
  const bool bytes_equal = std::memcmp(&a.cov_i12, &b.cov_i12, sizeof(double)) == 0 &&
                           std::memcmp(&a.standard_error, &b.standard_error, sizeof(double)) == 0;
  pass = pass && bytes_equal;
  c.finish(pass, detail + fmt("reproducible=%s", bytes_equal ? "yes" : "no"));
}

void criterion_8_lifshitz_halving() {
  Criterion c(8, "drude/ideal pressure ratio 0.5 and the A-coefficient discontinuity");
  bool pass = true;
  std::string detail;
  for (double tau : {5.0, 10.0}) {
    const double a = 1e-4;
    LifshitzConfig cfg;
    cfg.separation = a;
    cfg.temperature = tau * hbar * speed_of_light / (k_boltzmann * a);
    cfg.model = DielectricModel::ideal();
    const double p_ideal = pressure(cfg).value;
    cfg.model = DielectricModel::gold_like();
    const double p_drude = pressure(cfg).value;
    const double ratio = p_drude / p_ideal;
    pass = pass && std::fabs(ratio - 0.5) < 0.01 * 0.5;
    detail += fmt("tau=%.0f:%.4f ", tau, ratio);
  }
  const double a_plasma = zero_frequency_coefficient(DielectricModel::plasma(1.37e16));
  const bool disc = std::fabs(a_plasma - 1.37e16 * 1.37e16) < 1e-6 * a_plasma &&
                    zero_frequency_coefficient(DielectricModel::drude(1.37e16, 1e-30)) == 0.0 &&
                    zero_frequency_coefficient(DielectricModel::drude(1.37e16, 4.5e13)) == 0.0;
  pass = pass && disc;
  c.finish(pass, detail + fmt("A discontinuity=%s", disc ? "yes" : "no"));
}

void criterion_9_zero_temperature_anchor() {
  Criterion c(9, "plasma Wp a/c = 3000, t -> 0 reproduces -pi^2 hbar c/(240 a^4)");
  const double a = 1e-6;
  LifshitzConfig cfg;
  cfg.separation = a;
  cfg.temperature = 0.005 * hbar * speed_of_light / (k_boltzmann * a);
  cfg.model = DielectricModel::plasma(3000.0 * speed_of_light / a);
  const auto p = pressure(cfg);
  const double ref = -pi * pi * hbar * speed_of_light / (240.0 * a * a * a * a);
  const double rel = std::fabs(p.value - ref) / std::fabs(ref);
  c.finish(rel < 0.02 && p.converged, fmt("rel=%.3e tol=2e-02 terms=%d", rel, p.terms));
}

void criterion_10_geometry_oracle() {
  Criterion c(10, "mutual inductance closed form vs Neumann integral, m < 1");
  bool pass = true;
  std::string detail;
  for (double ratio : {2.0, 10.0, 100.0}) {
    WireGeometry g{0.1, 1e-5, 0.1 / ratio};
    const double closed = mutual_inductance(g);
    const double oracle = neumann_mutual_inductance(g);
    const double rel = std::fabs(closed - oracle) / closed;
    pass = pass && rel < 1e-6;
    const double m = coupling_profile(g).m;
    pass = pass && m > 0.0 && m < 1.0;
    detail += fmt("l/d=%.0f:%.1e(m=%.3f) ", ratio, rel, m);
  }
  c.finish(pass, detail + "tol=1e-06");
}

}  // namespace

int main() {
  std::printf("physics acceptance checks\n");
  criterion_1_equipartition_link();
  criterion_2_classical_free_energy();
  criterion_3_nernst_violation();
  criterion_4_rlc_asymptote();
  criterion_5_figure1_properties();
  criterion_6_zero_resistance();
  criterion_7_langevin_oracle();
  criterion_8_lifshitz_halving();
  criterion_9_zero_temperature_anchor();
  criterion_10_geometry_oracle();
  std::printf("%d of 10 checks failed\n", failures);
  return failures;
}
