// SPDX-License-Identifier: Apache-2.0
#include "islsim/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace islsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string_view to_string(BeamMode mode) {
  switch (mode) {
    case BeamMode::Isotropic: return "isotropic";
    case BeamMode::Dipole: return "dipole";
    case BeamMode::Butler: return "butler";
    case BeamMode::Steering: return "steering";
  }
  return "unknown";
}

BeamMode beam_mode_from_string(std::string_view name) {
  if (name == "isotropic") return BeamMode::Isotropic;
  if (name == "dipole") return BeamMode::Dipole;
  if (name == "butler") return BeamMode::Butler;
  if (name == "steering") return BeamMode::Steering;
  throw std::invalid_argument("unknown beam mode: " + std::string(name));
}

Constellation build_constellation(const ConstellationConfig& cfg, std::uint64_t seed) {
  if (cfg.planes < 2) {
    throw std::invalid_argument("constellation needs at least 2 orbital planes");
  }
  if (cfg.satellites <= 0 || cfg.satellites % cfg.planes != 0) {
    throw std::invalid_argument("satellite count must be a positive multiple of the plane count");
  }
  if (!cfg.phase0_rad.empty() &&
      static_cast<int>(cfg.phase0_rad.size()) != cfg.planes) {
    throw std::invalid_argument("phase0 must have one entry per plane");
  }

  Constellation c;
  c.cfg = cfg;
  if (c.cfg.phase0_rad.empty()) {
    std::mt19937_64 rng(seed);
    c.cfg.phase0_rad.resize(cfg.planes);
    for (double& ph : c.cfg.phase0_rad) {
      // 53-bit mantissa draw, deterministic across platforms.
      ph = kTwoPi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
  }

  const int per_plane = cfg.satellites / cfg.planes;
  c.sats.reserve(cfg.satellites);
  for (int p = 0; p < cfg.planes; ++p) {
    const double h = cfg.plane_altitude_km(p);
    const double a_m = (kEarthRadiusKm + h) * 1e3;
    const double mean_motion = std::sqrt(kMuEarthM3S2 / (a_m * a_m * a_m));
    const double raan = cfg.raan_span_rad * static_cast<double>(p) / cfg.planes;
    for (int n = 0; n < per_plane; ++n) {
      OrbitalElements el;
      el.id = p * per_plane + n;
      el.plane = p;
      el.altitude_km = h;
      el.raan_rad = raan;
      el.inclination_rad = cfg.inclination_rad;
      el.phase0_rad = c.cfg.phase0_rad[p] + kTwoPi * n / per_plane;
      el.mean_motion_rad_s = mean_motion;
      c.sats.push_back(el);
    }
  }
  return c;
}

double orbital_period_s(double altitude_km) {
  if (altitude_km < 0.0) {
    throw std::invalid_argument("altitude must be non-negative");
  }
  const double a_m = (kEarthRadiusKm + altitude_km) * 1e3;
  return kTwoPi * std::sqrt(a_m * a_m * a_m / kMuEarthM3S2);
}

double orbital_speed_km_s(double altitude_km) {
  const double a_m = (kEarthRadiusKm + altitude_km) * 1e3;
  return std::sqrt(kMuEarthM3S2 / a_m) / 1e3;
}

std::vector<SatelliteState> propagate(const Constellation& c, double t_s) {
  std::vector<SatelliteState> out;
  out.reserve(c.sats.size());
  for (const OrbitalElements& el : c.sats) {
    const double a_km = kEarthRadiusKm + el.altitude_km;
    const double u = el.phase0_rad + el.mean_motion_rad_s * t_s;  // argument of latitude
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(el.raan_rad), so = std::sin(el.raan_rad);
    const double ci = std::cos(el.inclination_rad), si = std::sin(el.inclination_rad);

    SatelliteState s;
    s.id = el.id;
    s.plane = el.plane;
    s.r = {a_km * (co * cu - so * su * ci),
           a_km * (so * cu + co * su * ci),
           a_km * su * si};
    const double v_km_s = a_km * el.mean_motion_rad_s;  // = sqrt(mu/a)
    s.v = {v_km_s * (-co * su - so * cu * ci),
           v_km_s * (-so * su + co * cu * ci),
           v_km_s * cu * si};
    s.e_zenith = s.r.normalized();
    s.e_roll = s.v.normalized();
    s.e_pitch = s.e_roll.cross(s.e_zenith);
    out.push_back(s);
  }
  return out;
}

RelativeGeometry relative_geometry(const SatelliteState& u, const SatelliteState& v) {
  const Vec3 d = v.r - u.r;
  RelativeGeometry rel;
  rel.x_km = d.dot(u.e_pitch);
  rel.y_km = d.dot(u.e_roll);
  rel.z_km = d.dot(u.e_zenith);
  // The direct norm, not the projection norm: bitwise symmetric under swap.
  rel.distance_km = d.norm();
  if (rel.distance_km == 0.0) {
    throw std::invalid_argument("relative geometry undefined for coincident positions");
  }
  double cz = rel.z_km / rel.distance_km;
  cz = std::clamp(cz, -1.0, 1.0);
  rel.theta = std::acos(cz);
  rel.phi = std::atan2(rel.y_km, rel.x_km);
  return rel;
}

double slant_range_limit_km(double hp_km, double hq_km) {
  return std::sqrt(hp_km * hp_km + 2.0 * kEarthRadiusKm * hp_km) +
         std::sqrt(hq_km * hq_km + 2.0 * kEarthRadiusKm * hq_km);
}

bool line_of_sight(const SatelliteState& u, const SatelliteState& v) {
  const double l = (v.r - u.r).norm();
  return l <= slant_range_limit_km(u.altitude_km(), v.altitude_km());
}

double fspl_linear(double distance_km, double carrier_hz) {
  const double l_m = distance_km * 1e3;
  const double x = 4.0 * std::numbers::pi * l_m * carrier_hz / kSpeedOfLightMS;
  return x * x;
}

}  // namespace islsim
