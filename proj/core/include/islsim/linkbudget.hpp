// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "islsim/constants.hpp"
#include "islsim/constellation.hpp"
#include "islsim/matching_state.hpp"

namespace islsim {

struct LinkBudgetContext {
  double tx_power_w = 10.0;      // Pt
  double bandwidth_hz = 200e6;   // B
  double noise_temp_k = 324.81;  // TN
  double carrier_hz = 20e9;      // f
  double boltzmann_j_k = kBoltzmannJK;
  double sinr_margin = 1.0;      // linear, >= 1

  double noise_w() const { return boltzmann_j_k * noise_temp_k * bandwidth_hz; }
};

LinkBudgetContext link_budget_context(const ConstellationConfig& cfg);

/// Endpoint-min rate: B log2(1 + min(sinr_t, sinr_tdt) / margin).
struct RateSelection {
  double rate_bps = 0.0;
  double sinr_t = 0.0;
  double sinr_tdt = 0.0;
};

double shannon_rate_bps(const LinkBudgetContext& ctx, double sinr_t, double sinr_tdt);

/// SNR of the (u, port_u) -> (v, port_v) transmission at snapshot s with the
/// pair's own indicators asserted to 1 (the conditional in the edge weight).
double conditional_snr(const MatchingState& st, int s, int u, int port_u, int v, int port_v);

/// Indicator-weighted SNR: zero unless both ports are committed.
double snr(const MatchingState& st, int s, int u, int port_u, int v, int port_v);

/// Upper-bound interference at receiver v, port_v, for a transmission from u.
double interference_upper_bound(const MatchingState& st, int s, int v, int port_v, int from_u);

/// Conditional SINR: conditional_snr / (1 + I).
double sinr(const MatchingState& st, int s, int u, int port_u, int v, int port_v);

/// Rate of the directed link u -> v on the given ports over [t, t+dt],
/// evaluated against the state's current interference bounds.
RateSelection link_rate(const MatchingState& st, int u, int port_u, int v, int port_v);

/// Same selection with the interference forced to zero (orthogonal-links
/// baseline; the matching itself is untouched).
RateSelection link_rate_interference_free(const MatchingState& st, int u, int port_u,
                                          int v, int port_v);

struct EdgeEvaluation {
  double weight_bps = 0.0;
  int port_u = 0;  // 0 when no viable port pair exists
  int port_v = 0;
  double rate_uv_bps = 0.0;
  double rate_vu_bps = 0.0;
};

/// Edge weight: the port pair maximizing the sum of the two conditional
/// directional rates, with ties broken on the smaller signed (port_u, port_v).
EdgeEvaluation edge_weight(const MatchingState& st, int u, int v);

}  // namespace islsim
