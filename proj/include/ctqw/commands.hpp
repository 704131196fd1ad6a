#pragma once

// Command implementations behind the `ctqw` executable.  Each command is a
// pure function from a RunConfig to CSV tables so the tables can be tested
// directly; thin wrappers write them into the configured output directory.

#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctqw/config.hpp"
#include "ctqw/csv.hpp"
#include "ctqw/nmr.hpp"
#include "ctqw/observables.hpp"
#include "ctqw/verify.hpp"
#include "ctqw/walk.hpp"

namespace ctqw::cli {

namespace detail {
inline constexpr double kPi = std::numbers::pi;
}

// node-occupation sweep of the classical walk, gamma*t in [0, 3]
inline CsvTable walk_classical_table(const RunConfig& cfg) {
  cfg.validate();
  const GeneratorMatrix h = cycle_generator(cfg.n_nodes, cfg.gamma);
  const auto p0 = ProbabilityDistribution::point_mass(cfg.n_nodes, 0);
  CsvTable table;
  table.header = {"t"};
  for (int k = 0; k < cfg.n_nodes; ++k) table.header.push_back("P" + std::to_string(k));
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double t = (3.0 / cfg.gamma) * i / (cfg.grid_points - 1);
    const auto p = classical_evolve(h, p0, t);
    std::vector<double> row{t};
    for (int k = 0; k < cfg.n_nodes; ++k) row.push_back(p[k]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

// node-occupation sweep of the quantum walk, gamma*t in [0, pi]
inline CsvTable walk_quantum_table(const RunConfig& cfg) {
  cfg.validate();
  const GeneratorMatrix h = cycle_generator(cfg.n_nodes, cfg.gamma);
  const auto psi0 = StateVector::basis(cfg.n_nodes, 0);
  CsvTable table;
  table.header = {"t"};
  for (int k = 0; k < cfg.n_nodes; ++k) table.header.push_back("P" + std::to_string(k));
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double t = (detail::kPi / cfg.gamma) * i / (cfg.grid_points - 1);
    const auto p = measurement_probabilities(quantum_evolve(h, psi0, t));
    std::vector<double> row{t};
    for (int k = 0; k < cfg.n_nodes; ++k) row.push_back(p[k]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

// distance-to-uniform curves plus the thirteen simulated experiment points
// (rows with expt=1); the 4-node walk regardless of n_nodes
inline CsvTable fig3_table(const RunConfig& cfg) {
  cfg.validate();
  const auto uniform = ProbabilityDistribution::uniform(4);
  CsvTable table;
  table.header = {"t", "tvd_classical", "tvd_quantum", "expt"};
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double t = (detail::kPi / cfg.gamma) * i / (cfg.grid_points - 1);
    const double tvd_c =
        total_variation_distance(classical_closed_form_cycle4(cfg.gamma, t), uniform);
    table.rows.push_back({t, tvd_c, observables_at(cfg.gamma, t).tvd_to_uniform, 0.0});
  }
  const nmr::SpinSystem system = cfg.spin_system();
  const nmr::NoiseModel noise{cfg.noise};
  for (int n = 0; n <= 12; ++n) {
    const double t = (n * detail::kPi / 12.0) / cfg.gamma;
    const double tvd_c =
        total_variation_distance(classical_closed_form_cycle4(cfg.gamma, t), uniform);
    const double tvd_q = nmr::experiment_tvd(nmr::run_experiment(n, system, noise));
    table.rows.push_back({t, tvd_c, tvd_q, 1.0});
  }
  return table;
}

// entanglement vs distance-to-uniform: theory curve over gamma*t in
// [0, pi/4] plus the simulated experiment points for n = 1..12
inline CsvTable fig4_table(const RunConfig& cfg) {
  cfg.validate();
  CsvTable table;
  table.header = {"S", "tvd_quantum_theory", "expt"};
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double t = (detail::kPi / 4.0 / cfg.gamma) * i / (cfg.grid_points - 1);
    const WalkObservables obs = observables_at(cfg.gamma, t);
    table.rows.push_back({obs.entanglement.value(), obs.tvd_to_uniform, 0.0});
  }
  const nmr::SpinSystem system = cfg.spin_system();
  const nmr::NoiseModel noise{cfg.noise};
  for (int n = 1; n <= 12; ++n) {
    const double t = (n * detail::kPi / 12.0) / cfg.gamma;
    const double s_theory = observables_at(cfg.gamma, t).entanglement.value();
    const double tvd_q = nmr::experiment_tvd(nmr::run_experiment(n, system, noise));
    table.rows.push_back({s_theory, tvd_q, 1.0});
  }
  return table;
}

// one row per requested step index: simulated populations plus the
// theoretical references at the same walk time
inline CsvTable nmr_table(const RunConfig& cfg, const std::vector<int>& n_values) {
  cfg.validate();
  const nmr::SpinSystem system = cfg.spin_system();
  const nmr::NoiseModel noise{cfg.noise};
  const auto uniform = ProbabilityDistribution::uniform(4);
  CsvTable table;
  table.header = {"n", "gamma_t", "P0", "P1", "P2", "P3", "tvd", "tvd_ideal", "S_theory"};
  for (int n : n_values) {
    if (n < 0 || n > 12) throw std::invalid_argument("walk step index must be in 0..12");
    const double gamma_t = n * detail::kPi / 12.0;
    const auto readout = nmr::run_experiment(n, system, noise);
    const auto ideal = measurement_probabilities(quantum_closed_form_cycle4(1.0, gamma_t));
    const double tvd_ideal = total_variation_distance(ideal, uniform);
    const double s_theory = observables_at(1.0, gamma_t).entanglement.value();
    table.rows.push_back({static_cast<double>(n), gamma_t, readout.populations[0],
                          readout.populations[1], readout.populations[2], readout.populations[3],
                          nmr::experiment_tvd(readout), tvd_ideal, s_theory});
  }
  return table;
}

inline void cmd_walk(const RunConfig& cfg) {
  write_csv(walk_classical_table(cfg), cfg.output_dir / "classical.csv");
  write_csv(walk_quantum_table(cfg), cfg.output_dir / "quantum.csv");
}

inline void cmd_figures(const RunConfig& cfg) {
  write_csv(fig3_table(cfg), cfg.output_dir / "fig3.csv");
  write_csv(fig4_table(cfg), cfg.output_dir / "fig4.csv");
}

inline void cmd_nmr(const RunConfig& cfg, const std::vector<int>& n_values) {
  write_csv(nmr_table(cfg, n_values), cfg.output_dir / "nmr.csv");
}

// runs the verification suite; returns 0 on success, 1 on any failure
inline int cmd_verify(const RunConfig& cfg, bool json_output, std::ostream& out) {
  cfg.validate();
  verify::Options opt;
  opt.j_hz = cfg.j_hz;
  opt.t2_proton = cfg.t2_proton;
  opt.t2_carbon = cfg.t2_carbon;
  const auto results = verify::run_all(opt);
  if (json_output) {
    nlohmann::json report = nlohmann::json::array();
    for (const auto& r : results) {
      report.push_back({{"criterion", r.name},
                        {"passed", r.passed},
                        {"measured", r.measured},
                        {"tolerance", r.tolerance}});
    }
    out << report.dump(2) << "\n";
    for (const auto& r : results)
      if (!r.passed) return 1;
    return 0;
  }
  return verify::report(results, out);
}

}  // namespace ctqw::cli
