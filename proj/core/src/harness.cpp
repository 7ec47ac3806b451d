// SPDX-License-Identifier: Apache-2.0
#include "islsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "islsim/scenario_io.hpp"
#include "islsim/version.hpp"

namespace islsim {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void parallel_for(int workers, int njobs, const std::function<void(int)>& fn) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min(workers, njobs);
  if (workers <= 1) {
    for (int i = 0; i < njobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < njobs; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

std::string dt_tag(double dt_s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", dt_s);
  return buf;
}

}  // namespace

std::uint64_t placement_seed(std::uint64_t master_seed, int placement) {
  // splitmix64 step over (master, placement).
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ull * (placement + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

InstanceResult run_instance(const Constellation& c, const ConstellationConfig& cfg,
                            double t_s) {
  InstanceResult res;
  res.t_s = t_s;
  SnapshotGains snap_t(propagate(c, t_s), cfg);
  SnapshotGains snap_tdt(propagate(c, t_s + cfg.matching_period_s), cfg);
  MatchResult match = run_matching(snap_t, snap_tdt, cfg);
  res.sum_rate_bps = match.sum_rate_bps;
  res.sum_rate_free_bps = match.sum_rate_free_bps;
  res.links = std::move(match.links);
  res.diag = match.diag;
  return res;
}

InstanceResult run_instance(const ConstellationConfig& cfg, std::uint64_t seed,
                            double t_s) {
  const Constellation c = build_constellation(cfg, seed);
  return run_instance(c, cfg, t_s);
}

KpiReport run_campaign(const ExperimentConfig& cfg) {
  if (cfg.placements < 1 || cfg.instances_per_placement < 1) {
    throw std::invalid_argument("campaign needs at least one placement and one instance");
  }

  KpiReport report;
  report.cfg = cfg;

  struct Cell {
    BeamMode mode;
    int ports;
    double dt_s;
  };
  std::vector<Cell> cells;
  for (BeamMode mode : cfg.modes) {
    const bool fixed_gain = mode == BeamMode::Isotropic || mode == BeamMode::Dipole;
    for (double dt : cfg.dts_s) {
      if (fixed_gain) {
        cells.push_back({mode, 1, dt});
      } else {
        for (int k : cfg.ports_list) cells.push_back({mode, k, dt});
      }
    }
  }

  const int jobs_per_cell = cfg.placements * cfg.instances_per_placement;
  for (const Cell& cell : cells) {
    ConstellationConfig base = cfg.base;
    base.mode = cell.mode;
    base.ports = cell.ports;
    base.matching_period_s = cell.dt_s;

    // One constellation per placement; instances walk its time grid.
    auto run_pass = [&](const ConstellationConfig& cc) {
      std::vector<Constellation> placements;
      placements.reserve(cfg.placements);
      for (int p = 0; p < cfg.placements; ++p) {
        ConstellationConfig draw = cc;
        draw.phase0_rad.clear();
        placements.push_back(build_constellation(draw, placement_seed(cfg.seed, p)));
      }
      std::vector<InstanceResult> results(jobs_per_cell);
      parallel_for(cfg.workers, jobs_per_cell, [&](int job) {
        const int p = job / cfg.instances_per_placement;
        const int i = job % cfg.instances_per_placement;
        InstanceResult r = run_instance(placements[p], cc, i * cc.matching_period_s);
        r.placement = p;
        r.instance = i;
        if (cc.zero_interference == false && cfg.rematch_interference_free) {
          ConstellationConfig zero = cc;
          zero.zero_interference = true;
          r.sum_rate_free_bps =
              run_instance(placements[p], zero, i * cc.matching_period_s).sum_rate_bps;
        }
        results[job] = std::move(r);
      });
      return results;
    };

    std::vector<InstanceResult> results = run_pass(base);

    ConfigKpis kpi;
    kpi.mode = cell.mode;
    kpi.ports = cell.ports;
    kpi.dt_s = cell.dt_s;
    kpi.n = jobs_per_cell;
    double sum = 0.0, sum_free = 0.0, links = 0.0;
    std::vector<double> sums(jobs_per_cell), sums_free(jobs_per_cell);
    for (int j = 0; j < jobs_per_cell; ++j) {
      const InstanceResult& r = results[j];
      sum += r.sum_rate_bps;
      sum_free += r.sum_rate_free_bps;
      links += static_cast<double>(r.links.size());
      sums[j] = r.sum_rate_bps;
      sums_free[j] = r.sum_rate_free_bps;
      for (const MatchedLink& l : r.links) {
        kpi.rate_samples_bps.push_back(l.rate_uv_bps);
        kpi.rate_samples_bps.push_back(l.rate_vu_bps);
      }
    }
    kpi.mean_sum_rate_bps = sum / jobs_per_cell;
    kpi.mean_sum_rate_free_bps = sum_free / jobs_per_cell;
    kpi.interference_loss_pct = kpi_interference_loss(sums, sums_free);
    kpi.mean_links = links / jobs_per_cell;

    if (cfg.cross_seam_eval && !base.cross_seam) {
      ConstellationConfig seam = base;
      seam.cross_seam = true;
      std::vector<InstanceResult> seam_results = run_pass(seam);
      double seam_sum = 0.0;
      for (const InstanceResult& r : seam_results) seam_sum += r.sum_rate_bps;
      kpi.has_cross_seam = true;
      kpi.cross_seam_mean_bps = seam_sum / jobs_per_cell;
      if (kpi.mean_sum_rate_bps > 0.0) {
        kpi.cross_seam_gain_pct =
            100.0 * (kpi.cross_seam_mean_bps - kpi.mean_sum_rate_bps) / kpi.mean_sum_rate_bps;
      }
    }

    if (cfg.dump_links > 0 && !cfg.output_dir.empty()) {
      std::filesystem::create_directories(cfg.output_dir);
      for (const InstanceResult& r : results) {
        if (r.placement != 0 || r.instance >= cfg.dump_links) continue;
        char name[160];
        std::snprintf(name, sizeof(name), "links_%s_K%d_dt%s_p%d_i%d.csv",
                      std::string(to_string(cell.mode)).c_str(), cell.ports,
                      dt_tag(cell.dt_s).c_str(), r.placement, r.instance);
        std::ofstream out = open_csv(std::filesystem::path(cfg.output_dir) / name);
        out << "t,u,v,ka_u,ka_v,rate_uv_bps,rate_vu_bps\n";
        for (const MatchedLink& l : r.links) {
          out << fmt(r.t_s) << ',' << l.u << ',' << l.v << ',' << l.port_u << ','
              << l.port_v << ',' << fmt(l.rate_uv_bps) << ',' << fmt(l.rate_vu_bps)
              << '\n';
        }
      }
    }

    report.rows.push_back(std::move(kpi));
  }
  return report;
}

std::vector<std::pair<double, double>> kpi_cdf(std::span<const double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("cdf needs at least one sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

double kpi_interference_loss(std::span<const double> sums,
                             std::span<const double> sums_free) {
  if (sums.size() != sums_free.size()) {
    throw std::invalid_argument("loss KPI needs paired runs");
  }
  double acc = 0.0;
  long long n = 0;
  for (size_t i = 0; i < sums.size(); ++i) {
    if (sums_free[i] <= 0.0) continue;
    acc += 100.0 * (sums_free[i] - sums[i]) / sums_free[i];
    ++n;
  }
  return n > 0 ? acc / n : 0.0;
}

void emit_reports(const KpiReport& report, const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);
  const fs::path dir(output_dir);

  {
    std::ofstream out = open_csv(dir / "sum_rates.csv");
    out << "mode,K,dt_s,mean_sum_rate_bps,n\n";
    for (const ConfigKpis& row : report.rows) {
      out << to_string(row.mode) << ',' << row.ports << ',' << fmt(row.dt_s) << ','
          << fmt(row.mean_sum_rate_bps) << ',' << row.n << '\n';
    }
  }

  if (report.cfg.interference_free) {
    std::ofstream out = open_csv(dir / "interference_loss.csv");
    out << "mode,K,dt_s,loss_percent,n\n";
    for (const ConfigKpis& row : report.rows) {
      out << to_string(row.mode) << ',' << row.ports << ',' << fmt(row.dt_s) << ','
          << fmt(row.interference_loss_pct) << ',' << row.n << '\n';
    }
  }

  if (report.cfg.cross_seam_eval) {
    std::ofstream out = open_csv(dir / "cross_seam_gain.csv");
    out << "mode,K,dt_s,gain_percent,base_bps,cross_seam_bps\n";
    for (const ConfigKpis& row : report.rows) {
      if (!row.has_cross_seam) continue;
      out << to_string(row.mode) << ',' << row.ports << ',' << fmt(row.dt_s) << ','
          << fmt(row.cross_seam_gain_pct) << ',' << fmt(row.mean_sum_rate_bps) << ','
          << fmt(row.cross_seam_mean_bps) << '\n';
    }
  }

  for (const ConfigKpis& row : report.rows) {
    char name[96];
    std::snprintf(name, sizeof(name), "cdf_%s_%d_%s.csv",
                  std::string(to_string(row.mode)).c_str(), row.ports,
                  dt_tag(row.dt_s).c_str());
    std::ofstream out = open_csv(dir / name);
    out << "rate_bps,cdf\n";
    if (!row.rate_samples_bps.empty()) {
      for (const auto& [rate, frac] : kpi_cdf(row.rate_samples_bps)) {
        out << fmt(rate) << ',' << fmt(frac) << '\n';
      }
    }
  }

  {
    std::ofstream out = open_csv(dir / "run_manifest.txt");
    out << "islsim " << kVersion << "\n";
    out << "seed = " << report.cfg.seed << "\n";
    out << "placements = " << report.cfg.placements << "\n";
    out << "instances_per_placement = " << report.cfg.instances_per_placement << "\n";
    out << "modes =";
    for (BeamMode m : report.cfg.modes) out << ' ' << to_string(m);
    out << "\nports =";
    for (int k : report.cfg.ports_list) out << ' ' << k;
    out << "\ndt_s =";
    for (double dt : report.cfg.dts_s) out << ' ' << fmt(dt);
    out << "\ninterference_free = " << (report.cfg.interference_free ? "true" : "false");
    out << "\ncross_seam_eval = " << (report.cfg.cross_seam_eval ? "true" : "false");
    out << "\n[scenario]\n";
    save_scenario(report.cfg.base, out);
  }
}

std::string render_summary(const KpiReport& report) {
  std::vector<double> dts = report.cfg.dts_s;
  std::sort(dts.begin(), dts.end());
  dts.erase(std::unique(dts.begin(), dts.end()), dts.end());

  std::ostringstream out;
  out << "Average sum of rates (Mbit/s)\n";
  char buf[64];
  out << "  mode       K";
  for (double dt : dts) {
    std::snprintf(buf, sizeof(buf), "  dt=%-8s", dt_tag(dt).c_str());
    out << buf;
  }
  out << '\n';

  // Preserve row order, but fold the dt columns of one (mode, K) together.
  std::vector<std::pair<BeamMode, int>> seen;
  for (const ConfigKpis& row : report.rows) {
    const std::pair<BeamMode, int> key{row.mode, row.ports};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    std::snprintf(buf, sizeof(buf), "  %-9s %2d", std::string(to_string(row.mode)).c_str(),
                  row.ports);
    out << buf;
    for (double dt : dts) {
      bool found = false;
      for (const ConfigKpis& r : report.rows) {
        if (r.mode == row.mode && r.ports == row.ports && r.dt_s == dt) {
          std::snprintf(buf, sizeof(buf), "  %11.4f", r.mean_sum_rate_bps / 1e6);
          out << buf;
          found = true;
          break;
        }
      }
      if (!found) out << "            -";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace islsim
