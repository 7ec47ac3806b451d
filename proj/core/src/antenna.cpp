// SPDX-License-Identifier: Apache-2.0
#include "islsim/antenna.hpp"

#include <cmath>
#include <stdexcept>

namespace islsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sum of the geometric phase series e^{j m beta}, m = 0..n-1, via a running
// rotation (one sincos per series).
std::complex<double> phase_series(double beta, int n) {
  const std::complex<double> step = std::polar(1.0, beta);
  std::complex<double> term{1.0, 0.0};
  std::complex<double> sum{0.0, 0.0};
  for (int m = 0; m < n; ++m) {
    sum += term;
    term *= step;
  }
  return sum;
}

RelativeGeometry direction(double phi, double theta) {
  RelativeGeometry rel;
  rel.distance_km = 1.0;
  rel.phi = phi;
  rel.theta = theta;
  rel.x_km = std::sin(theta) * std::cos(phi);
  rel.y_km = std::sin(theta) * std::sin(phi);
  rel.z_km = std::cos(theta);
  return rel;
}

}  // namespace

ArrayConfig array_config(const ConstellationConfig& cfg) {
  ArrayConfig a;
  a.ports = cfg.mode == BeamMode::Isotropic || cfg.mode == BeamMode::Dipole ? 1 : cfg.ports;
  a.element_spacing_m = cfg.spacing_m();
  a.wavelength_m = cfg.wavelength_m();
  a.polar_angle_rad = cfg.polar_angle_rad;
  a.mode = cfg.mode;
  if (a.ports < 1) throw std::invalid_argument("array needs at least one port");
  if (a.mode == BeamMode::Butler || a.mode == BeamMode::Steering) {
    if ((a.ports & (a.ports - 1)) != 0) {
      throw std::invalid_argument("butler/steering arrays need a power-of-two port count");
    }
  }
  return a;
}

int ports_per_face(const ArrayConfig& cfg) {
  return cfg.mode == BeamMode::Butler ? cfg.ports : 1;
}

int port_slot(int port, int ppf) {
  return port < 0 ? -port - 1 : ppf + port - 1;
}

int slot_port(int slot, int ppf) {
  return slot < ppf ? -(slot + 1) : slot - ppf + 1;
}

std::vector<std::complex<double>> array_response(double phi, double theta,
                                                 const ArrayConfig& cfg) {
  const int k = cfg.ports;
  const double c_az = -kTwoPi * cfg.element_spacing_m * std::sin(phi) / cfg.wavelength_m;
  const double c_pol = -kTwoPi * cfg.element_spacing_m * std::cos(theta) / cfg.wavelength_m;
  std::vector<std::complex<double>> a(static_cast<size_t>(k) * k);
  for (int mp = 0; mp < k; ++mp) {
    const std::complex<double> pol = std::polar(1.0, c_pol * mp);
    for (int ma = 0; ma < k; ++ma) {
      a[static_cast<size_t>(mp) * k + ma] = pol * std::polar(1.0, c_az * ma);
    }
  }
  return a;
}

BeamWeights butler_beam(int k, const ArrayConfig& cfg) {
  const int n = cfg.ports;
  if (k < 1 || k > n) throw std::out_of_range("butler port index out of range");
  const double pol_step =
      -kTwoPi * cfg.element_spacing_m * std::cos(cfg.polar_angle_rad) / cfg.wavelength_m;
  const double az_step = -std::numbers::pi * (2.0 * k - 1.0) / n;
  BeamWeights b;
  b.label = k;
  b.w.resize(static_cast<size_t>(n) * n);
  const double scale = 1.0 / n;  // (1/sqrt(K)) twice
  for (int mp = 0; mp < n; ++mp) {
    const std::complex<double> pol = std::polar(scale, pol_step * mp);
    for (int ma = 0; ma < n; ++ma) {
      b.w[static_cast<size_t>(mp) * n + ma] = pol * std::polar(1.0, az_step * ma);
    }
  }
  return b;
}

BeamWeights steered_beam(double phi, double theta, const ArrayConfig& cfg) {
  BeamWeights b;
  b.w = array_response(phi, theta, cfg);
  const double inv = 1.0 / cfg.ports;
  for (auto& w : b.w) w *= inv;
  return b;
}

double beam_gain(const RelativeGeometry& rel, const BeamWeights& beam, int face,
                 const ArrayConfig& cfg) {
  if (!face_visible(rel, face)) return 0.0;
  const auto a = array_response(rel.phi, rel.theta, cfg);
  std::complex<double> acc{0.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i) acc += std::conj(beam.w[i]) * a[i];
  return std::norm(acc);
}

double dipole_gain(const RelativeGeometry& rel, int face, const ArrayConfig& cfg) {
  if (!face_visible(rel, face)) return 0.0;
  // Dipole axis in the pitch-zenith plane at polar angle theta - pi/2 on this
  // face, putting the pattern maximum (broadside) at the fixed polar angle.
  const double tilt = cfg.polar_angle_rad - 0.5 * std::numbers::pi;
  const double ax = std::sin(tilt) * face;
  const double az = std::cos(tilt);
  const double inv = 1.0 / rel.distance_km;
  const double cos_psi = (rel.x_km * ax + rel.z_km * az) * inv;
  const double sin2 = 1.0 - cos_psi * cos_psi;
  if (sin2 <= 0.0) return 0.0;  // along the axis
  const double num = std::cos(0.5 * std::numbers::pi * cos_psi);
  return 1.64 * num * num / sin2;
}

double total_gain(const RelativeGeometry& u_rel, const RelativeGeometry& v_rel,
                  const BeamWeights& beam_u, const BeamWeights& beam_v,
                  int face_u, int face_v, const ArrayConfig& cfg) {
  return beam_gain(u_rel, beam_u, face_u, cfg) * beam_gain(v_rel, beam_v, face_v, cfg);
}

void port_gains(const RelativeGeometry& rel, const ArrayConfig& cfg,
                std::span<double> out) {
  const int ppf = ports_per_face(cfg);
  for (auto& g : out) g = 0.0;
  const double c = std::cos(rel.phi);
  const int face = c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
  if (face == 0) return;

  switch (cfg.mode) {
    case BeamMode::Isotropic:
      out[port_slot(face, ppf)] = 1.0;
      return;
    case BeamMode::Dipole:
      out[port_slot(face, ppf)] = dipole_gain(rel, face, cfg);
      return;
    case BeamMode::Butler: {
      const int k = cfg.ports;
      const double spacing = kTwoPi * cfg.element_spacing_m / cfg.wavelength_m;
      const double alpha = spacing * (std::cos(cfg.polar_angle_rad) - std::cos(rel.theta));
      const double pol2 = std::norm(phase_series(alpha, k)) / k;
      const double az_shift = spacing * std::sin(rel.phi);
      for (int beam = 1; beam <= k; ++beam) {
        const double beta = std::numbers::pi * (2.0 * beam - 1.0) / k - az_shift;
        const double az2 = std::norm(phase_series(beta, k)) / k;
        out[port_slot(face * beam, ppf)] = pol2 * az2;
      }
      return;
    }
    case BeamMode::Steering:
      throw std::logic_error("port gain tables are not defined for steering mode");
  }
}

double steered_gain(const RelativeGeometry& steer_at, const RelativeGeometry& eval_at,
                    int face, const ArrayConfig& cfg) {
  if (!face_visible(eval_at, face)) return 0.0;
  const int k = cfg.ports;
  const double spacing = kTwoPi * cfg.element_spacing_m / cfg.wavelength_m;
  const double d_az = spacing * (std::sin(steer_at.phi) - std::sin(eval_at.phi));
  const double d_pol = spacing * (std::cos(steer_at.theta) - std::cos(eval_at.theta));
  const double az2 = std::norm(phase_series(d_az, k));
  const double pol2 = std::norm(phase_series(d_pol, k));
  return az2 * pol2 / (static_cast<double>(k) * k);
}

std::vector<PatternPoint> export_pattern(const ArrayConfig& cfg, double grid_deg,
                                         double steer_phi_rad) {
  if (grid_deg <= 0.0) throw std::invalid_argument("pattern grid step must be positive");
  const int steps = static_cast<int>(std::lround(360.0 / grid_deg));
  const double theta = cfg.polar_angle_rad;

  std::vector<BeamWeights> beams;
  if (cfg.mode == BeamMode::Butler) {
    for (int k = 1; k <= cfg.ports; ++k) beams.push_back(butler_beam(k, cfg));
  } else if (cfg.mode == BeamMode::Steering) {
    beams.push_back(steered_beam(steer_phi_rad, theta, cfg));
  }

  std::vector<PatternPoint> rows;
  rows.reserve(static_cast<size_t>(steps) * std::max<size_t>(beams.size(), 1));
  for (int i = 1; i <= steps; ++i) {
    const double phi_deg = -180.0 + grid_deg * i;
    const double phi = phi_deg * std::numbers::pi / 180.0;
    const RelativeGeometry rel = direction(phi, theta);
    const double c = std::cos(phi);
    const int face = c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
    auto to_dbi = [](double g) { return g > 0.0 ? 10.0 * std::log10(g) : -400.0; };
    switch (cfg.mode) {
      case BeamMode::Butler:
      case BeamMode::Steering: {
        // Steering radiates from the face holding the target.
        const int beam_face = cfg.mode == BeamMode::Steering
                                  ? (std::cos(steer_phi_rad) > 0.0 ? 1 : -1)
                                  : face;
        for (const BeamWeights& b : beams) {
          const double g = face == 0 ? 0.0 : beam_gain(rel, b, beam_face, cfg);
          rows.push_back({phi_deg, to_dbi(g), cfg.mode == BeamMode::Butler ? b.label : 0});
        }
        break;
      }
      case BeamMode::Isotropic:
        rows.push_back({phi_deg, to_dbi(face == 0 ? 0.0 : 1.0), 0});
        break;
      case BeamMode::Dipole:
        rows.push_back({phi_deg, to_dbi(face == 0 ? 0.0 : dipole_gain(rel, face, cfg)), 0});
        break;
    }
  }
  return rows;
}

}  // namespace islsim
