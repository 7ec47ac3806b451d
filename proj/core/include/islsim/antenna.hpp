// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "islsim/constellation.hpp"

namespace islsim {

struct ArrayConfig {
  int ports = 8;                   // K, side length of the K x K array
  double element_spacing_m = 0.0;  // d_e
  double wavelength_m = 0.0;
  double polar_angle_rad = 0.0;    // fixed elevation for butler beams / dipole tilt
  BeamMode mode = BeamMode::Butler;
};

ArrayConfig array_config(const ConstellationConfig& cfg);

/// One beam: complex weights of length K^2, unit Euclidean norm.
/// label is the butler port index k (1..K) or an arbitrary tag for steering.
struct BeamWeights {
  std::vector<std::complex<double>> w;
  int label = 0;
};

/// Antenna ports are signed integers: the sign is the face d_a (+/- pitch),
/// the magnitude the beam index on that face. Butler arrays expose K ports
/// per face, every other mode exposes one.
int ports_per_face(const ArrayConfig& cfg);

/// Array response a(phi, theta) = a_pol kron a_az, K^2 unit-modulus entries.
std::vector<std::complex<double>> array_response(double phi, double theta,
                                                 const ArrayConfig& cfg);

/// Beam k of the Butler feed network, b_pol kron b_k_az. The K azimuth beams
/// are mutually orthogonal; the polar factor is fixed at cfg.polar_angle_rad.
BeamWeights butler_beam(int k, const ArrayConfig& cfg);

/// Digitally steered beam pointed exactly at (phi, theta): a(phi, theta)/K.
BeamWeights steered_beam(double phi, double theta, const ArrayConfig& cfg);

/// |b^H a(phi, theta)|^2 toward the peer, 0 when the peer is on the shielded
/// side of face `face`.
double beam_gain(const RelativeGeometry& rel, const BeamWeights& beam, int face,
                 const ArrayConfig& cfg);

/// Half-wave dipole mounted on face `face`, tilted in the pitch-zenith plane
/// so the pattern maximum sits at the fixed polar angle. Peak gain 1.64.
double dipole_gain(const RelativeGeometry& rel, int face, const ArrayConfig& cfg);

/// Product of the two per-end gains of a link.
double total_gain(const RelativeGeometry& u_rel, const RelativeGeometry& v_rel,
                  const BeamWeights& beam_u, const BeamWeights& beam_v,
                  int face_u, int face_v, const ArrayConfig& cfg);

/// True when the peer lies on the radiating side of face `face`.
inline bool face_visible(const RelativeGeometry& rel, int face) {
  return std::cos(rel.phi) * face > 0.0;
}

// Fast paths used by the matching engine; same arithmetic as the vector
// forms above, with the Kronecker inner products factored.

/// Gains of all 2*ports_per_face ports toward `rel`, written into `out`
/// (slot layout: face -1 ports 1..ppf, then face +1 ports 1..ppf).
void port_gains(const RelativeGeometry& rel, const ArrayConfig& cfg,
                std::span<double> out);

int port_slot(int port, int ppf);
int slot_port(int slot, int ppf);

/// Gain of a beam steered at `steer_at`, evaluated toward `eval_at`, for the
/// array on face `face`. Equals K^2 when both directions coincide.
double steered_gain(const RelativeGeometry& steer_at, const RelativeGeometry& eval_at,
                    int face, const ArrayConfig& cfg);

struct PatternPoint {
  double phi_deg = 0.0;
  double gain_dbi = 0.0;
  int beam = 0;  // butler port, 0 for single-beam modes
};

/// Azimuth sweep at the fixed polar angle over (-180, 180]. Butler mode
/// emits one row per (grid point, beam); steering points the beam at
/// steer_phi_rad. Gains of exactly zero are floored at -400 dBi.
std::vector<PatternPoint> export_pattern(const ArrayConfig& cfg, double grid_deg,
                                         double steer_phi_rad = 0.0);

}  // namespace islsim
