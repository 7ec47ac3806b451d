// SPDX-License-Identifier: Apache-2.0
#include "islsim/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace islsim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("bad boolean for " + key + ": " + v);
}

}  // namespace

ConstellationConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path);
  }
  ConstellationConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto num = [&] {
      try {
        size_t used = 0;
        const double d = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return d;
      } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": bad number for " + key + ": " + value);
      }
    };

    if (key == "P") cfg.planes = static_cast<int>(num());
    else if (key == "N") cfg.satellites = static_cast<int>(num());
    else if (key == "delta") cfg.inclination_rad = num() * kDeg;
    else if (key == "h1") cfg.min_altitude_km = num();
    else if (key == "delta_h") cfg.altitude_step_km = num();
    else if (key == "Pt") cfg.tx_power_w = num();
    else if (key == "B") cfg.bandwidth_hz = num();
    else if (key == "f") cfg.carrier_hz = num();
    else if (key == "TN") cfg.noise_temp_k = num();
    else if (key == "dt") cfg.matching_period_s = num();
    else if (key == "K") cfg.ports = static_cast<int>(num());
    else if (key == "theta") cfg.polar_angle_rad = num() * kDeg;
    else if (key == "d_e") cfg.element_spacing_m = value == "auto" ? 0.0 : num();
    else if (key == "raan_span") cfg.raan_span_rad = num() * kDeg;
    else if (key == "mode") cfg.mode = beam_mode_from_string(value);
    else if (key == "cross_seam") cfg.cross_seam = parse_bool(value, key);
    else if (key == "sinr_margin") cfg.sinr_margin = num();
    else if (key == "all_plane_pairs") cfg.all_plane_pairs = parse_bool(value, key);
    else if (key == "update_weights") cfg.update_weights = parse_bool(value, key);
    else if (key == "restore_on_guard_fail") cfg.restore_on_guard_fail = parse_bool(value, key);
    else {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key: " + key);
    }
  }

  if (cfg.planes < 2) throw std::invalid_argument(path + ": P must be >= 2");
  if (cfg.satellites <= 0 || cfg.satellites % cfg.planes != 0) {
    throw std::invalid_argument(path + ": N must be a positive multiple of P");
  }
  if (cfg.sinr_margin < 1.0) {
    throw std::invalid_argument(path + ": sinr_margin must be >= 1 (linear)");
  }
  return cfg;
}

void save_scenario(const ConstellationConfig& cfg, std::ostream& out) {
  out << "P = " << cfg.planes << "\n";
  out << "N = " << cfg.satellites << "\n";
  out << "delta = " << cfg.inclination_rad / kDeg << "\n";
  out << "h1 = " << cfg.min_altitude_km << "\n";
  out << "delta_h = " << cfg.altitude_step_km << "\n";
  out << "Pt = " << cfg.tx_power_w << "\n";
  out << "B = " << cfg.bandwidth_hz << "\n";
  out << "f = " << cfg.carrier_hz << "\n";
  out << "TN = " << cfg.noise_temp_k << "\n";
  out << "dt = " << cfg.matching_period_s << "\n";
  out << "K = " << cfg.ports << "\n";
  out << "theta = " << cfg.polar_angle_rad / kDeg << "\n";
  out << "d_e = ";
  if (cfg.element_spacing_m > 0.0) out << cfg.element_spacing_m << "\n";
  else out << "auto\n";
  out << "raan_span = " << cfg.raan_span_rad / kDeg << "\n";
  out << "mode = " << to_string(cfg.mode) << "\n";
  out << "cross_seam = " << (cfg.cross_seam ? "true" : "false") << "\n";
  out << "sinr_margin = " << cfg.sinr_margin << "\n";
  if (cfg.all_plane_pairs) out << "all_plane_pairs = true\n";
  if (cfg.update_weights) out << "update_weights = true\n";
  if (cfg.restore_on_guard_fail) out << "restore_on_guard_fail = true\n";
}

}  // namespace islsim
