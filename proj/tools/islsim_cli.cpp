// SPDX-License-Identifier: Apache-2.0
//
// islsim command line: scenario simulation, campaign sweeps, antenna pattern
// and rate-CDF exports. See README.md for the scenario file format.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "islsim/harness.hpp"
#include "islsim/scenario_io.hpp"
#include "islsim/version.hpp"

namespace {

using namespace islsim;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int workers = 0;
  int placements = 10;
  int instances = 100;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config_path, "scenario file");
  if (config_required) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "master seed");
  cmd->add_option("--workers", args.workers, "worker threads (0 = all cores)");
  cmd->add_option("--placements", args.placements, "initial placements");
  cmd->add_option("--instances", args.instances, "instances per placement");
}

ConstellationConfig load_base(const CommonArgs& args) {
  return load_scenario(args.config_path);
}

int run_simulate(const CommonArgs& args, const std::string& mode, int ports, double dt,
                 bool cross_seam, bool interference_free, int dump_links) {
  ExperimentConfig e;
  e.base = load_base(args);
  if (!mode.empty()) e.base.mode = beam_mode_from_string(mode);
  if (ports > 0) e.base.ports = ports;
  if (dt > 0.0) e.base.matching_period_s = dt;
  if (cross_seam) e.base.cross_seam = true;
  e.modes = {e.base.mode};
  e.ports_list = {e.base.ports};
  e.dts_s = {e.base.matching_period_s};
  e.placements = args.placements;
  e.instances_per_placement = args.instances;
  e.seed = args.seed;
  e.workers = args.workers;
  e.interference_free = interference_free;
  e.dump_links = dump_links;
  e.output_dir = args.out_dir;

  const KpiReport report = run_campaign(e);
  emit_reports(report, args.out_dir);
  std::cout << render_summary(report);
  if (interference_free && !report.rows.empty()) {
    std::printf("interference loss: %.4f %%\n", report.rows[0].interference_loss_pct);
  }
  return 0;
}

int run_sweep(const CommonArgs& args, const std::vector<std::string>& modes,
              std::vector<int> ports, std::vector<double> dts, bool cross_seam,
              bool interference_free) {
  ExperimentConfig e;
  e.base = load_base(args);
  for (const std::string& m : modes) e.modes.push_back(beam_mode_from_string(m));
  e.ports_list = ports.empty() ? std::vector<int>{e.base.ports} : std::move(ports);
  e.dts_s = dts.empty() ? std::vector<double>{e.base.matching_period_s} : std::move(dts);
  e.placements = args.placements;
  e.instances_per_placement = args.instances;
  e.seed = args.seed;
  e.workers = args.workers;
  e.interference_free = interference_free;
  e.cross_seam_eval = cross_seam;
  e.output_dir = args.out_dir;

  const KpiReport report = run_campaign(e);
  emit_reports(report, args.out_dir);
  std::cout << render_summary(report);
  return 0;
}

int run_pattern(const CommonArgs& args, const std::string& mode, int ports,
                double grid_deg, double steer_phi_deg) {
  ConstellationConfig base = load_base(args);
  if (!mode.empty()) base.mode = beam_mode_from_string(mode);
  if (ports > 0) base.ports = ports;
  const ArrayConfig arr = array_config(base);
  const auto rows =
      export_pattern(arr, grid_deg, steer_phi_deg * std::numbers::pi / 180.0);

  std::filesystem::create_directories(args.out_dir);
  char name[96];
  std::snprintf(name, sizeof(name), "pattern_%s_K%d.csv",
                std::string(to_string(base.mode)).c_str(), arr.ports);
  const std::filesystem::path path = std::filesystem::path(args.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const bool with_beam = base.mode == BeamMode::Butler;
  out << (with_beam ? "phi_deg,gain_dbi,beam_k\n" : "phi_deg,gain_dbi\n");
  char line[128];
  for (const PatternPoint& pt : rows) {
    if (with_beam) {
      std::snprintf(line, sizeof(line), "%.10g,%.10g,%d\n", pt.phi_deg, pt.gain_dbi,
                    pt.beam);
    } else {
      std::snprintf(line, sizeof(line), "%.10g,%.10g\n", pt.phi_deg, pt.gain_dbi);
    }
    out << line;
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int run_cdf(const CommonArgs& args, std::vector<int> ports, double dt) {
  ExperimentConfig e;
  e.base = load_base(args);
  e.modes = {BeamMode::Butler, BeamMode::Dipole};
  e.ports_list = ports.empty() ? std::vector<int>{1, 2, 4, 8} : std::move(ports);
  e.dts_s = {dt};
  e.placements = args.placements;
  e.instances_per_placement = args.instances;
  e.seed = args.seed;
  e.workers = args.workers;
  e.output_dir = args.out_dir;

  const KpiReport report = run_campaign(e);
  emit_reports(report, args.out_dir);
  std::cout << render_summary(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inter-plane inter-satellite link simulator"};
  app.set_version_flag("--version", std::string(islsim::kVersion));
  app.require_subcommand(1);

  CommonArgs sim_args, sweep_args, pattern_args, cdf_args;

  auto* simulate = app.add_subcommand("simulate", "run one configuration");
  add_common(simulate, sim_args, true);
  std::string sim_mode;
  int sim_ports = 0;
  double sim_dt = 0.0;
  bool sim_cross_seam = false, sim_iffree = false;
  int sim_dump_links = 1;
  simulate->add_option("--mode", sim_mode, "isotropic|dipole|butler|steering");
  simulate->add_option("--ports", sim_ports, "antenna ports per array (K)");
  simulate->add_option("--dt", sim_dt, "matching period (s)");
  simulate->add_flag("--cross-seam", sim_cross_seam, "enable cross-seam ISLs");
  simulate->add_flag("--interference-free", sim_iffree,
                     "also report the interference-free loss");
  simulate->add_option("--dump-links", sim_dump_links,
                       "write link CSVs for the first n instances");

  auto* sweep = app.add_subcommand("sweep", "run a full campaign");
  add_common(sweep, sweep_args, true);
  std::vector<std::string> sweep_modes{"isotropic", "dipole", "butler", "steering"};
  std::vector<int> sweep_ports{1, 2, 4, 8};
  std::vector<double> sweep_dts{10.0, 30.0, 60.0};
  bool sweep_cross_seam = false, sweep_iffree = false;
  sweep->add_option("--mode", sweep_modes, "modes to sweep")->delimiter(',');
  sweep->add_option("--ports", sweep_ports, "port counts to sweep")->delimiter(',');
  sweep->add_option("--dt", sweep_dts, "matching periods to sweep (s)")->delimiter(',');
  sweep->add_flag("--cross-seam", sweep_cross_seam,
                  "paired runs with cross-seam ISLs enabled (gain KPI)");
  sweep->add_flag("--interference-free", sweep_iffree,
                  "paired interference-free rates (loss KPI)");

  auto* pattern = app.add_subcommand("pattern", "export an azimuth gain pattern");
  add_common(pattern, pattern_args, true);
  std::string pattern_mode;
  int pattern_ports = 0;
  double grid_deg = 0.1, steer_phi_deg = 0.0;
  pattern->add_option("--mode", pattern_mode, "isotropic|dipole|butler|steering");
  pattern->add_option("--ports", pattern_ports, "antenna ports per array (K)");
  pattern->add_option("--grid-deg", grid_deg, "azimuth grid step (degrees)");
  pattern->add_option("--steer-phi-deg", steer_phi_deg, "steering target azimuth");

  auto* cdf = app.add_subcommand("cdf", "rate CDFs for butler ports plus dipole");
  add_common(cdf, cdf_args, true);
  std::vector<int> cdf_ports;
  double cdf_dt = 30.0;
  cdf->add_option("--ports", cdf_ports, "butler port counts")->delimiter(',');
  cdf->add_option("--dt", cdf_dt, "matching period (s)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_args, sim_mode, sim_ports, sim_dt, sim_cross_seam,
                          sim_iffree, sim_dump_links);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_args, sweep_modes, sweep_ports, sweep_dts,
                       sweep_cross_seam, sweep_iffree);
    }
    if (pattern->parsed()) {
      return run_pattern(pattern_args, pattern_mode, pattern_ports, grid_deg,
                         steer_phi_deg);
    }
    if (cdf->parsed()) {
      return run_cdf(cdf_args, cdf_ports, cdf_dt);
    }
  } catch (const std::exception& err) {
    std::cerr << "islsim: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
