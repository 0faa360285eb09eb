// jnforce: batch front-end for the noisy-antenna and Lifshitz calculators.
//
//   jnforce <command> --config <path> [--output <path>] [--format csv|json] [--seed N]
//
// Exit codes: 0 success; 1 usage/config error; 2 numerical non-convergence;
// 3 oracle-check failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jnforce/antenna_geometry.hpp"
#include "jnforce/circuit_noise.hpp"
#include "jnforce/constants.hpp"
#include "jnforce/langevin_oracle.hpp"
#include "jnforce/lifshitz.hpp"
#include "jnforce/rng.hpp"
#include "jnforce/table.hpp"

using nlohmann::json;
using namespace jnforce;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error("config error at " + path + ": " + message) {}
};

const json& field(const json& j, const std::string& path, const char* name) {
  if (!j.contains(name)) throw ConfigError(path + "." + name, "missing required field");
  return j.at(name);
}

double number(const json& j, const std::string& path, const char* name) {
  const json& v = field(j, path, name);
  if (!v.is_number()) throw ConfigError(path + "." + name, "expected a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& path, const char* name, double fallback) {
  if (!j.contains(name)) return fallback;
  const json& v = j.at(name);
  if (!v.is_number()) throw ConfigError(path + "." + name, "expected a number");
  return v.get<double>();
}

std::string text(const json& j, const std::string& path, const char* name) {
  const json& v = field(j, path, name);
  if (!v.is_string()) throw ConfigError(path + "." + name, "expected a string");
  return v.get<std::string>();
}

std::vector<double> grid(const json& j, const std::string& path, const char* name) {
  const json& v = field(j, path, name);
  if (!v.is_array() || v.empty()) throw ConfigError(path + "." + name, "expected a non-empty array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(path + "." + name, "grid entries must be numbers");
    out.push_back(e.get<double>());
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) {
      throw ConfigError(path + "." + name, "grid must be strictly increasing");
    }
  }
  return out;
}

ResistanceLaw parse_resistance(const json& j, const std::string& path) {
  const std::string kind = text(j, path, "kind");
  if (kind == "constant") return ResistanceLaw::constant(number(j, path, "ohm"));
  if (kind == "power_law") {
    return ResistanceLaw::power_law(number(j, path, "r_ref_ohm"),
                                    number(j, path, "t_ref_kelvin"),
                                    number_or(j, path, "exponent", 2.0));
  }
  if (kind == "tabulated") {
    return ResistanceLaw::tabulated(grid(j, path, "temperature_kelvin"),
                                    [&] {
                                      const json& v = field(j, path, "ohm");
                                      std::vector<double> out;
                                      for (const auto& e : v) out.push_back(e.get<double>());
                                      return out;
                                    }());
  }
  throw ConfigError(path + ".kind", "expected constant | power_law | tabulated");
}

// ---------------------------------------------------------------------------

int run_antenna_scan(const json& cfg, Table& out) {
  const std::string path = "antenna-scan";
  const std::string circuit = text(cfg, path, "circuit");
  if (circuit != "rl" && circuit != "rlc") {
    throw ConfigError(path + ".circuit", "expected rl | rlc");
  }
  const std::string units = text(cfg, path, "units");
  bool any_nonconverged = false;

  if (units == "reduced") {
    const double m_sq = number(cfg, path, "m_sq");
    const double kappa = circuit == "rlc" ? number(cfg, path, "kappa") : 0.0;
    const double slope = number_or(cfg, path, "resistance_exponent", 2.0);
    const auto rhos = grid(cfg, path, "rho_grid");
    for (double rho : rhos) {
      ReducedParams p{rho, m_sq, kappa};
      const auto fe = free_energy_reduced(p);
      const auto h = h_factor(p);
      IntegralValue s{};
      if (rho > 0.0) s = entropy_reduced(p, slope);
      any_nonconverged |= !fe.converged || !h.converged || (rho > 0.0 && !s.converged);
      out.add_row({rho, m_sq, kappa, fe.value, s.value, h.value,
                   fe.error + s.error + h.error});
    }
  } else if (units == "si") {
    AntennaPair pair;
    pair.inductance = number(cfg, path, "inductance_henry");
    pair.coupling = number(cfg, path, "coupling");
    if (circuit == "rlc") pair.capacitance = number(cfg, path, "capacitance_farad");
    pair.resistance = parse_resistance(field(cfg, path, "resistance"), path + ".resistance");
    const auto temps = grid(cfg, path, "temperature_grid_kelvin");
    for (double T : temps) {
      const ReducedParams p = reduce(pair, T);
      const auto fe = free_energy_reduced(p);
      const auto h = h_factor(p);
      const auto s = entropy_reduced(p, pair.resistance.log_slope(T));
      any_nonconverged |= !fe.converged || !h.converged || !s.converged;
      const double kbt = constants::k_boltzmann * T;
      out.add_row({T, p.rho, p.kappa, kbt * fe.value, constants::k_boltzmann * s.value,
                   kbt * h.value, kbt * (fe.error + h.error) + constants::k_boltzmann * s.error});
    }
  } else {
    throw ConfigError(path + ".units", "expected reduced | si");
  }
  return any_nonconverged ? 2 : 0;
}

int run_figure1(const json& cfg, Table& out) {
  const std::string path = "figure1";
  const double m = number(cfg, path, "m");
  const double coeff = number_or(cfg, path, "omega_r_coefficient", 5.0);
  const auto ts = grid(cfg, path, "t_grid");
  if (!(ts.front() > 0.0)) throw ConfigError(path + ".t_grid", "reduced temperatures must be > 0");
  const auto pts = figure1_curve(ts, m, coeff);
  for (const auto& p : pts) {
    const double y = 1.0 / p.temperature;
    const double s_self = y > 700.0 ? 0.0
                                    : -std::log1p(-std::exp(-y)) + y / std::expm1(y);
    out.add_row({p.temperature, p.free_energy, p.entropy, s_self,
                 p.entropy + 2.0 * s_self, p.force_coefficient, p.quadrature_error});
  }
  return 0;
}

int run_lifshitz_scan(const json& cfg, Table& out, bool with_ratio) {
  const std::string path = "lifshitz-scan";
  const auto seps = grid(cfg, path, "separation_meter_grid");
  const double T = number(cfg, path, "temperature_kelvin");
  const json& models = field(cfg, path, "models");
  if (!models.is_array() || models.empty()) {
    throw ConfigError(path + ".models", "expected a non-empty array of model names");
  }

  bool wants_drude = false;
  std::vector<DielectricModel> parsed;
  std::vector<std::string> names;
  for (const auto& e : models) {
    const std::string name = e.get<std::string>();
    if (name == "ideal") {
      parsed.push_back(DielectricModel::ideal());
    } else if (name == "plasma") {
      parsed.push_back(DielectricModel::plasma(number(cfg, path, "plasma_frequency_rad_per_s")));
    } else if (name == "drude") {
      wants_drude = true;
      parsed.push_back(DielectricModel::drude(number(cfg, path, "plasma_frequency_rad_per_s"),
                                              number(cfg, path, "relaxation_rad_per_s")));
    } else {
      throw ConfigError(path + ".models", "expected ideal | plasma | drude, got " + name);
    }
    names.push_back(name);
  }
  if (!wants_drude && cfg.contains("relaxation_rad_per_s")) {
    std::cerr << "warning: relaxation_rad_per_s is ignored (no drude model requested)\n";
  }

  const double tail = number_or(cfg, path, "tail_tolerance", 1e-10);
  bool any_nonconverged = false;
  for (double a : seps) {
    double p_ideal = 0.0;
    if (with_ratio) {
      LifshitzConfig ic;
      ic.separation = a;
      ic.temperature = T;
      ic.model = DielectricModel::ideal();
      ic.tail_tolerance = tail;
      p_ideal = pressure(ic).value;
    }
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      LifshitzConfig lc;
      lc.separation = a;
      lc.temperature = T;
      lc.model = parsed[i];
      lc.tail_tolerance = tail;
      const auto fe = free_energy_per_area(lc);
      const auto pr = pressure(lc);
      any_nonconverged |= !fe.converged || !pr.converged;
      std::vector<Table::Cell> row = {a,
                                      T,
                                      names[i],
                                      fe.value,
                                      pr.value,
                                      static_cast<long>(pr.terms),
                                      std::max(fe.truncation_bound, pr.truncation_bound)};
      if (with_ratio) row.push_back(pr.value / p_ideal);
      out.add_row(std::move(row));
    }
  }
  return any_nonconverged ? 2 : 0;
}

int run_oracle_check(const json& cfg, Table& out, std::uint64_t seed) {
  const std::string path = "oracle-check";
  const json& mv = field(cfg, path, "m_values");
  if (!mv.is_array() || mv.empty()) throw ConfigError(path + ".m_values", "expected a non-empty array");

  const double inductance = number_or(cfg, path, "inductance", 1.0);
  const double kbt = number_or(cfg, path, "thermal_energy", 1.0);
  const double resistance = number_or(cfg, path, "resistance", 1.0);
  const double sigma_tol = number_or(cfg, path, "sigma_tolerance", 3.0);
  const double h_tol = number_or(cfg, path, "h_tolerance", 1e-6);
  const bool absolute = cfg.contains("absolute_tolerance");
  const double abs_tol = number_or(cfg, path, "absolute_tolerance", 0.0);

  SimulationConfig sim;
  if (cfg.contains("simulation")) {
    const json& s = cfg.at("simulation");
    sim.time_step = number_or(s, path + ".simulation", "time_step", sim.time_step);
    sim.steps = static_cast<long>(number_or(s, path + ".simulation", "steps", sim.steps));
    sim.burn_in = static_cast<long>(number_or(s, path + ".simulation", "burn_in", sim.burn_in));
    sim.ensemble = static_cast<long>(number_or(s, path + ".simulation", "ensemble", sim.ensemble));
  }
  sim.seed = seed;

  bool all_pass = true;
  for (const auto& e : mv) {
    const double m = e.get<double>();
    const double mutual = m * inductance;
    const auto est = simulate_coupled_rl(inductance, mutual, resistance, kbt, sim);
    const auto exact = equipartition_covariance(inductance, mutual, kbt);
    const double dev = std::abs(est.cov_i12 - exact.cov_i12);
    const bool sim_pass = absolute ? dev <= abs_tol : dev <= sigma_tol * est.standard_error;

    const double h_quad = h_factor_zero_rho(m * m);
    const double h_exact = oracle_h_zero(m * m);
    const bool h_pass = std::abs(h_quad - h_exact) <= h_tol;

    all_pass = all_pass && sim_pass && h_pass;
    out.add_row({m, est.cov_i12, exact.cov_i12, est.standard_error,
                 est.standard_error > 0.0 ? dev / est.standard_error : 0.0, h_quad, h_exact,
                 std::abs(h_quad - h_exact),
                 std::string((sim_pass && h_pass) ? "PASS" : "FAIL")});
  }
  return all_pass ? 0 : 3;
}

int run_geometry(const json& cfg, Table& out) {
  const std::string path = "geometry";
  WireGeometry g;
  g.length = number(cfg, path, "length_meter");
  g.wire_radius = number(cfg, path, "wire_radius_meter");
  const auto seps = grid(cfg, path, "separation_meter_grid");
  for (double d : seps) {
    g.separation = d;
    const double l_self = self_inductance(g);
    const double m_mut = mutual_inductance(g);
    const auto cp = coupling_profile(g);
    const double m_neumann = neumann_mutual_inductance(g);
    out.add_row({d, l_self, m_mut, cp.m, cp.dm2_dd, m_neumann,
                 std::abs(m_mut - m_neumann) / m_mut,
                 static_cast<long>(g.thin_wire_strained() ? 1 : 0)});
  }
  return 0;
}

std::vector<std::string> columns_for(const std::string& command, const std::string& mode,
                                     bool with_ratio) {
  if (command == "antenna-scan") {
    if (mode == "si") {
      return {"temperature_kelvin", "rho", "kappa", "free_energy_joule",
              "entropy_joule_per_kelvin", "force_coefficient_joule", "quadrature_error"};
    }
    return {"rho", "m_sq", "kappa", "free_energy_per_kbt", "entropy_per_kb",
            "force_coefficient_per_kbt", "quadrature_error"};
  }
  if (command == "figure1") {
    return {"t", "free_energy_hbar_omega_c", "interaction_entropy_kb", "self_entropy_kb",
            "total_entropy_kb", "force_coefficient_hbar_omega_c", "quadrature_error"};
  }
  if (command == "lifshitz-scan") {
    std::vector<std::string> cols = {"separation_meter", "temperature_kelvin", "model",
                                     "free_energy_joule_per_m2", "pressure_pascal",
                                     "matsubara_terms", "truncation_bound"};
    if (with_ratio) cols.push_back("pressure_ratio_vs_ideal");
    return cols;
  }
  if (command == "oracle-check") {
    return {"m", "cov_simulated", "cov_equipartition", "standard_error", "sigma_deviation",
            "h_quadrature", "h_oracle", "h_abs_diff", "verdict"};
  }
  return {"separation_meter", "self_inductance_henry", "mutual_inductance_henry", "coupling_m",
          "dm2_dd_per_meter", "neumann_mutual_henry", "closed_vs_neumann_rel",
          "thin_wire_strained"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal Johnson-Nyquist forces between antennas and Lifshitz pressures"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string format = "csv";
  std::uint64_t seed = 1;

  const std::vector<std::string> commands = {"antenna-scan", "figure1", "lifshitz-scan",
                                             "oracle-check", "geometry"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--output", output_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "random seed (oracle-check)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const bool seed_from_flag = sub->count("--seed") > 0;

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "config error at " << config_path << ": cannot open file\n";
    return 1;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string raw = buffer.str();

  json cfg;
  try {
    cfg = json::parse(raw);
  } catch (const json::parse_error& e) {
    std::cerr << "config error at " << config_path << ": " << e.what() << "\n";
    return 1;
  }

  int code = 0;
  try {
    // the flag wins; otherwise a seed in the config is honored
    if (!seed_from_flag && cfg.contains("seed")) {
      seed = cfg.at("seed").get<std::uint64_t>();
    }
    bool with_ratio = false;
    if (command == "lifshitz-scan" && cfg.contains("ratio_vs_ideal")) {
      with_ratio = cfg.at("ratio_vs_ideal").get<bool>();
    }
    // the antenna-scan header depends on the requested unit system
    std::string mode = "reduced";
    if (command == "antenna-scan") mode = text(cfg, "antenna-scan", "units");

    Table table{columns_for(command, mode, with_ratio)};
    table.set_metadata("tool_version", kToolVersion);
    table.set_metadata("command", command);
    table.set_metadata("config_hash_fnv1a64", fnv1a_hex(raw));
    table.set_metadata("seed", std::to_string(seed));
    table.set_metadata("generator", generator_id());

    if (command == "antenna-scan") {
      code = run_antenna_scan(cfg, table);
    } else if (command == "figure1") {
      code = run_figure1(cfg, table);
    } else if (command == "lifshitz-scan") {
      code = run_lifshitz_scan(cfg, table, with_ratio);
    } else if (command == "oracle-check") {
      code = run_oracle_check(cfg, table, seed);
    } else {
      code = run_geometry(cfg, table);
    }

    const std::string payload = format == "json" ? table.to_json() : table.to_csv();
    if (output_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream outf(output_path, std::ios::binary);
      if (!outf) {
        std::cerr << "error: cannot open output file " << output_path << "\n";
        return 1;
      }
      outf << payload;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "config error at " << config_path << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
