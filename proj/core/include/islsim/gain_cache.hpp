// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "islsim/antenna.hpp"
#include "islsim/constellation.hpp"

namespace islsim {

/// One propagated time snapshot with the pairwise quantities the link budget
/// and the matching keep asking for: relative geometry, LoS, the channel
/// coefficient rho = Pt / (B kB TN L), and (for switched-beam modes) the
/// gains of every antenna port toward every visible peer.
class SnapshotGains {
 public:
  SnapshotGains(std::vector<SatelliteState> states, const ConstellationConfig& cfg);

  int count() const { return n_; }
  const std::vector<SatelliteState>& states() const { return states_; }
  const SatelliteState& state(int u) const { return states_[u]; }
  const ArrayConfig& array() const { return array_; }
  int ports_per_face() const { return ppf_; }

  bool los(int u, int v) const { return rho_[idx(u, v)] > 0.0; }
  /// Pt / (B kB TN L); zero when the pair has no line of sight.
  double rho(int u, int v) const { return rho_[idx(u, v)]; }
  const RelativeGeometry& rel(int u, int v) const { return rel_[idx(u, v)]; }

  /// Gains of all 2*ppf ports of `from` toward `to` (zeros off-face/NLoS).
  std::span<const double> port_gains(int from, int to) const {
    return {&gains_[idx(from, to) * 2 * ppf_], static_cast<size_t>(2 * ppf_)};
  }
  double port_gain(int from, int to, int port) const {
    return gains_[idx(from, to) * 2 * ppf_ + port_slot(port, ppf_)];
  }

  /// Steering mode: gain of `from`'s beam steered at `target`, toward `to`.
  double steered_gain_toward(int from, int target, int to) const;

  /// Face of `u` that holds `v` (+1, -1, or 0 on the boundary).
  int face_of(int u, int v) const;

 private:
  size_t idx(int u, int v) const { return static_cast<size_t>(u) * n_ + v; }

  int n_ = 0;
  int ppf_ = 1;
  ArrayConfig array_;
  std::vector<SatelliteState> states_;
  std::vector<RelativeGeometry> rel_;  // ordered pairs
  std::vector<double> rho_;
  std::vector<double> gains_;         // ordered pairs x 2*ppf (empty for steering)
};

}  // namespace islsim
