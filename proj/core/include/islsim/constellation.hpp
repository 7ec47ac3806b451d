// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "islsim/constants.hpp"
#include "islsim/vec3.hpp"

namespace islsim {

enum class BeamMode { Isotropic, Dipole, Butler, Steering };

std::string_view to_string(BeamMode mode);
BeamMode beam_mode_from_string(std::string_view name);

/// Full scenario description: Walker-star geometry plus the RF parameters
/// shared by every run.
struct ConstellationConfig {
  int planes = 7;                                    // P
  int satellites = 140;                              // N
  double inclination_rad = 98.6 * std::numbers::pi / 180.0;  // delta
  double min_altitude_km = 600.0;                    // h1
  double altitude_step_km = 4.0;                     // delta_h, orbital separation
  double raan_span_rad = std::numbers::pi;           // ascending nodes spread (star = pi)
  std::vector<double> phase0_rad;                    // per-plane anomaly offset; empty = draw from seed

  double carrier_hz = 20e9;                          // f
  double bandwidth_hz = 200e6;                       // B
  double tx_power_w = 10.0;                          // Pt
  double noise_temp_k = 324.81;                      // TN
  int ports = 8;                                     // K, ports/beams per array
  double element_spacing_m = 0.0;                    // d_e; <= 0 means lambda/2
  double polar_angle_rad = 100.0 * std::numbers::pi / 180.0;  // theta, fixed beam elevation
  double matching_period_s = 30.0;                   // dt
  bool cross_seam = false;
  double sinr_margin = 1.0;                          // linear, >= 1
  BeamMode mode = BeamMode::Butler;

  // Algorithm knobs.
  bool update_weights = false;        // refresh edge weights after each commit
  bool all_plane_pairs = false;       // consider every plane pair, not only adjacent ones
  bool restore_on_guard_fail = false; // experimental: undo pruning when the face guard fails
  bool zero_interference = false;     // force I = 0 everywhere (benchmark scenario)

  int per_plane() const { return satellites / planes; }
  double wavelength_m() const { return kSpeedOfLightMS / carrier_hz; }
  double spacing_m() const {
    return element_spacing_m > 0.0 ? element_spacing_m : 0.5 * wavelength_m();
  }
  double plane_altitude_km(int plane) const {
    return min_altitude_km + plane * altitude_step_km;
  }
};

struct OrbitalElements {
  int id = 0;
  int plane = 0;
  double altitude_km = 0.0;
  double raan_rad = 0.0;
  double inclination_rad = 0.0;
  double phase0_rad = 0.0;         // argument of latitude at t = 0
  double mean_motion_rad_s = 0.0;
};

struct Constellation {
  ConstellationConfig cfg;
  std::vector<OrbitalElements> sats;
};

/// Position, velocity and body frame of one satellite at one instant.
/// The body frame is zenith = radial out, roll = along-track (velocity),
/// pitch = roll x zenith (cross-track); the antenna arrays sit on the
/// +/- pitch faces.
struct SatelliteState {
  int id = 0;
  int plane = 0;
  Vec3 r;  // km, Earth-centered inertial
  Vec3 v;  // km/s
  Vec3 e_pitch, e_roll, e_zenith;

  double altitude_km() const { return r.norm() - kEarthRadiusKm; }
};

/// Peer position expressed in the observer's body frame. phi is the azimuth
/// from the pitch axis in (-pi, pi] (atan2 convention, so a peer straight
/// along -zenith reports phi = 0); theta is the polar angle from zenith.
struct RelativeGeometry {
  double distance_km = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double x_km = 0.0;  // component along pitch
  double y_km = 0.0;  // component along roll
  double z_km = 0.0;  // component along zenith
};

/// Builds the Walker-star constellation: P planes with ascending nodes spread
/// over raan_span, N/P evenly spaced satellites per plane, plane p at
/// altitude h1 + p*delta_h. When cfg.phase0_rad is empty the per-plane phase
/// offsets are drawn uniformly in [0, 2pi) from `seed`.
Constellation build_constellation(const ConstellationConfig& cfg, std::uint64_t seed = 0);

double orbital_period_s(double altitude_km);
double orbital_speed_km_s(double altitude_km);

std::vector<SatelliteState> propagate(const Constellation& c, double t_s);

RelativeGeometry relative_geometry(const SatelliteState& u, const SatelliteState& v);

/// Maximum line-of-sight distance between satellites at altitudes hp and hq.
double slant_range_limit_km(double hp_km, double hq_km);

bool line_of_sight(const SatelliteState& u, const SatelliteState& v);

/// Free-space path loss as a linear factor, (4 pi l f / c)^2.
double fspl_linear(double distance_km, double carrier_hz);

}  // namespace islsim
