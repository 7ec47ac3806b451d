// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "islsim/gain_cache.hpp"

namespace islsim {

/// How the upper-bound interference is maintained across commits.
///
/// Incremental folds each newly committed beam into per-(receiver, port)
/// accumulators and is the production path. FullTable keeps the bounds in
/// the full per-port-pair table the matching algorithm is usually described
/// with, updating every entry on every commit; it produces the same numbers
/// at a per-commit cost of O(N^2 K^2) (O(N^2) for steering) and exists so
/// that cost can be measured.
enum class InterferenceUpdate { Incremental, FullTable };

struct ActiveBeam {
  int sat = -1;
  int port = 0;    // signed; sign = face
  int target = -1; // partner the beam serves (steering points here)
};

struct MatchDiagnostics {
  unsigned long long interference_terms = 0;  // gain-product terms evaluated in commits
  unsigned long long weight_evaluations = 0;
  unsigned long long commits = 0;
  unsigned long long iterations = 0;
  unsigned long long guard_failures = 0;
  unsigned long long pruned_edges = 0;
};

/// Matching indicators {m_uv, m_u(k_a), m_u(d_a)} plus the accumulated
/// interference bounds at t and t+dt. Single writer; reads are safe from
/// anywhere once a commit returns.
class MatchingState {
 public:
  MatchingState(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                const ConstellationConfig& cfg,
                InterferenceUpdate update = InterferenceUpdate::Incremental);

  const SnapshotGains& snap(int s) const { return *snaps_[s]; }
  const ConstellationConfig& config() const { return *cfg_; }
  int count() const { return n_; }
  int ports_per_face() const { return ppf_; }
  BeamMode mode() const { return cfg_->mode; }
  InterferenceUpdate update_mode() const { return update_; }

  bool pair_matched(int u, int v) const {
    return partners_[u][0] == v || partners_[u][1] == v;
  }
  bool face_used(int u, int face) const { return faces_[2 * u + (face > 0)] != 0; }
  bool port_used(int u, int port) const {
    return ports_[static_cast<size_t>(u) * 2 * ppf_ + port_slot(port, ppf_)] != 0;
  }
  const std::array<int, 2>& partners(int u) const { return partners_[u]; }
  const std::vector<ActiveBeam>& beams() const { return beams_; }

  /// Algorithm steps 10-12: marks the pair, faces and ports as matched and
  /// folds the new link into the interference bounds at both snapshots.
  void commit(int u, int port_u, int v, int port_v);

  /// Upper-bound interference at receiver v (port_v for switched beams).
  /// from_u names the intended transmitter; it matters only for steering,
  /// where it fixes the receive beam direction.
  double interference(int s, int v, int port_v, int from_u) const;

  MatchDiagnostics& diag() const { return diag_; }

 private:
  void add_beam_field(int s, int beam_index);
  void incremental_apply(int s, const ActiveBeam& b, double sign, int only_receiver);
  void full_table_apply(int s, const ActiveBeam& b, double sign, int only_receiver);

  const SnapshotGains* snaps_[2];
  const ConstellationConfig* cfg_;
  InterferenceUpdate update_;
  int n_ = 0;
  int ppf_ = 1;

  std::vector<std::array<int, 2>> partners_;
  std::vector<char> faces_;   // n x 2
  std::vector<char> ports_;   // n x 2*ppf
  std::vector<ActiveBeam> beams_;

  // Incremental accumulators: I per (receiver, port slot).
  std::array<std::vector<double>, 2> interf_;
  // Steering incremental: per beam, rho * g_tx at every receiver.
  std::array<std::vector<std::vector<double>>, 2> beam_field_;
  // FullTable storage. Switched beams: (n*2ppf)^2 entries indexed
  // [tx_port_slot][rx_port_slot]; steering: n^2 entries [receiver][toward].
  std::array<std::vector<double>, 2> table_;

  mutable MatchDiagnostics diag_;
};

}  // namespace islsim
