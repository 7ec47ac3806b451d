// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "islsim/matching.hpp"

namespace islsim {

/// Campaign description: which (mode, K, dt) cells to run and how many
/// placements x instances per cell.
struct ExperimentConfig {
  ConstellationConfig base;
  std::vector<BeamMode> modes;
  std::vector<int> ports_list;   // ignored for isotropic/dipole rows
  std::vector<double> dts_s;
  int placements = 10;
  int instances_per_placement = 100;
  std::uint64_t seed = 1;
  bool interference_free = false;        // emit the interference-loss KPI
  bool rematch_interference_free = false;  // re-match under zero interference instead
  bool cross_seam_eval = false;          // paired seam-on runs for the gain KPI
  int workers = 0;                       // 0 = hardware concurrency
  int dump_links = 0;                    // link dumps for the first instances of placement 0
  std::string output_dir;
};

struct InstanceResult {
  int placement = 0;
  int instance = 0;
  double t_s = 0.0;
  double sum_rate_bps = 0.0;
  double sum_rate_free_bps = 0.0;
  std::vector<MatchedLink> links;
  MatchDiagnostics diag;
};

/// Aggregated KPIs of one (mode, K, dt) cell.
struct ConfigKpis {
  BeamMode mode = BeamMode::Butler;
  int ports = 1;
  double dt_s = 0.0;
  long long n = 0;
  double mean_sum_rate_bps = 0.0;
  double mean_sum_rate_free_bps = 0.0;
  double interference_loss_pct = 0.0;  // mean of 100 (Sfree - S)/Sfree
  double mean_links = 0.0;
  std::vector<double> rate_samples_bps;  // per-ISL directional rates
  bool has_cross_seam = false;
  double cross_seam_mean_bps = 0.0;
  double cross_seam_gain_pct = 0.0;
};

struct KpiReport {
  ExperimentConfig cfg;
  std::vector<ConfigKpis> rows;
};

/// One full pipeline pass at time t: propagate both interval endpoints,
/// enumerate, match, price, and fold in the interference-free baseline.
InstanceResult run_instance(const Constellation& c, const ConstellationConfig& cfg,
                            double t_s);
InstanceResult run_instance(const ConstellationConfig& cfg, std::uint64_t placement_seed,
                            double t_s);

/// Per-placement phase seed, derived so job order and worker count never
/// change the draw.
std::uint64_t placement_seed(std::uint64_t master_seed, int placement);

KpiReport run_campaign(const ExperimentConfig& cfg);

/// Empirical CDF over the samples: sorted (value, cumulative fraction).
std::vector<std::pair<double, double>> kpi_cdf(std::span<const double> samples);

/// Mean of 100 (Sfree - S)/Sfree over paired instances (Sfree = 0 skipped).
double kpi_interference_loss(std::span<const double> sums,
                             std::span<const double> sums_free);

/// Writes sum_rates.csv, interference_loss.csv, cross_seam_gain.csv, the
/// per-cell CDF files, optional link dumps and the run manifest.
void emit_reports(const KpiReport& report, const std::string& output_dir);

/// Table II-style summary, Mbit/s with 4 decimals.
std::string render_summary(const KpiReport& report);

}  // namespace islsim
