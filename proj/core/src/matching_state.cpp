// SPDX-License-Identifier: Apache-2.0
#include "islsim/matching_state.hpp"

#include <stdexcept>

namespace islsim {

MatchingState::MatchingState(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                             const ConstellationConfig& cfg, InterferenceUpdate update)
    : snaps_{&snap_t, &snap_tdt},
      cfg_(&cfg),
      update_(update),
      n_(snap_t.count()),
      ppf_(snap_t.ports_per_face()) {
  if (snap_tdt.count() != n_) {
    throw std::invalid_argument("snapshots cover different constellations");
  }
  partners_.assign(n_, {-1, -1});
  faces_.assign(static_cast<size_t>(n_) * 2, 0);
  ports_.assign(static_cast<size_t>(n_) * 2 * ppf_, 0);
  if (cfg.zero_interference) return;

  const bool steering = cfg.mode == BeamMode::Steering;
  for (int s = 0; s < 2; ++s) {
    if (update_ == InterferenceUpdate::Incremental) {
      if (!steering) interf_[s].assign(static_cast<size_t>(n_) * 2 * ppf_, 0.0);
    } else {
      if (steering) {
        table_[s].assign(static_cast<size_t>(n_) * n_, 0.0);
      } else {
        const size_t tp = static_cast<size_t>(n_) * 2 * ppf_;
        table_[s].assign(tp * tp, 0.0);
      }
    }
  }
}

void MatchingState::commit(int u, int port_u, int v, int port_v) {
  const int prior_end = static_cast<int>(beams_.size());
  // Indicators first, so the new beams already see m_uv = 1.
  auto set_partner = [&](int a, int b) {
    if (partners_[a][0] == -1) partners_[a][0] = b;
    else if (partners_[a][1] == -1) partners_[a][1] = b;
    else throw std::logic_error("satellite already has two links");
  };
  set_partner(u, v);
  set_partner(v, u);
  faces_[2 * u + (port_u > 0)] = 1;
  faces_[2 * v + (port_v > 0)] = 1;
  ports_[static_cast<size_t>(u) * 2 * ppf_ + port_slot(port_u, ppf_)] = 1;
  ports_[static_cast<size_t>(v) * 2 * ppf_ + port_slot(port_v, ppf_)] = 1;

  const int new_begin = static_cast<int>(beams_.size());
  beams_.push_back({u, port_u, v});
  beams_.push_back({v, port_v, u});
  diag_.commits++;

  if (cfg_->zero_interference) return;
  const bool steering = cfg_->mode == BeamMode::Steering;

  for (int s = 0; s < 2; ++s) {
    if (update_ == InterferenceUpdate::Incremental) {
      if (steering) {
        // Exclusion by the pair indicators happens at query time.
        add_beam_field(s, new_begin);
        add_beam_field(s, new_begin + 1);
      } else {
        // m_uv flipping to 1 removes the partners' earlier beams from each
        // other's bounds; then the new beams are folded in everywhere else.
        for (int i = 0; i < prior_end; ++i) {
          if (beams_[i].sat == u) incremental_apply(s, beams_[i], -1.0, v);
          if (beams_[i].sat == v) incremental_apply(s, beams_[i], -1.0, u);
        }
        incremental_apply(s, beams_[new_begin], 1.0, -1);
        incremental_apply(s, beams_[new_begin + 1], 1.0, -1);
      }
    } else {
      for (int i = 0; i < prior_end; ++i) {
        if (beams_[i].sat == u) full_table_apply(s, beams_[i], -1.0, v);
        if (beams_[i].sat == v) full_table_apply(s, beams_[i], -1.0, u);
      }
      full_table_apply(s, beams_[new_begin], 1.0, -1);
      full_table_apply(s, beams_[new_begin + 1], 1.0, -1);
    }
  }
}

void MatchingState::incremental_apply(int s, const ActiveBeam& b, double sign,
                                      int only_receiver) {
  const SnapshotGains& g = snap(s);
  for (int w = 0; w < n_; ++w) {
    if (w == b.sat) continue;
    if (only_receiver >= 0 && w != only_receiver) continue;
    if (sign > 0.0 && pair_matched(b.sat, w)) continue;
    const double rho = g.rho(b.sat, w);
    if (rho == 0.0) continue;
    const double gtx = g.port_gain(b.sat, w, b.port);
    if (gtx == 0.0) continue;
    const double f = sign * rho * gtx;
    const auto rx = g.port_gains(w, b.sat);
    double* acc = &interf_[s][static_cast<size_t>(w) * 2 * ppf_];
    for (int slot = 0; slot < 2 * ppf_; ++slot) {
      acc[slot] += f * rx[slot];
    }
    diag_.interference_terms += 2 * ppf_;
  }
}

void MatchingState::add_beam_field(int s, int beam_index) {
  const ActiveBeam& b = beams_[beam_index];
  const SnapshotGains& g = snap(s);
  auto& rows = beam_field_[s];
  rows.resize(beams_.size());
  std::vector<double>& row = rows[beam_index];
  row.assign(n_, 0.0);
  for (int w = 0; w < n_; ++w) {
    if (w == b.sat) continue;
    const double rho = g.rho(b.sat, w);
    if (rho == 0.0) continue;
    row[w] = rho * g.steered_gain_toward(b.sat, b.target, w);
    diag_.interference_terms++;
  }
}

void MatchingState::full_table_apply(int s, const ActiveBeam& b, double sign, int only_receiver) {
  const SnapshotGains& g = snap(s);
  if (cfg_->mode == BeamMode::Steering) {
    for (int v = 0; v < n_; ++v) {
      if (v == b.sat) continue;
      if (only_receiver >= 0 && v != only_receiver) continue;
      const double excl = (sign > 0.0 && pair_matched(b.sat, v)) ? 0.0 : 1.0;
      const double ftx = g.rho(b.sat, v) * g.steered_gain_toward(b.sat, b.target, v);
      double* row = &table_[s][static_cast<size_t>(v) * n_];
      for (int toward = 0; toward < n_; ++toward) {
        if (toward == v) continue;
        row[toward] += sign * excl * ftx * g.steered_gain_toward(v, toward, b.sat);
        diag_.interference_terms++;
      }
    }
    return;
  }

  // Switched beams: walk the full (tx port slot) x (rx port slot) table the
  // way the update step is usually written, although the bound only depends
  // on the receiver-side slot.
  const size_t tp = static_cast<size_t>(n_) * 2 * ppf_;
  for (size_t us = 0; us < tp; ++us) {
    double* row = &table_[s][us * tp];
    for (int v = 0; v < n_; ++v) {
      if (v == b.sat) continue;
      if (only_receiver >= 0 && v != only_receiver) continue;
      const double excl = (sign > 0.0 && pair_matched(b.sat, v)) ? 0.0 : 1.0;
      const double rho = g.rho(b.sat, v);
      const double gtx = g.port_gain(b.sat, v, b.port);
      const auto rx = g.port_gains(v, b.sat);
      for (int slot = 0; slot < 2 * ppf_; ++slot) {
        row[static_cast<size_t>(v) * 2 * ppf_ + slot] +=
            sign * excl * rho * gtx * rx[slot];
        diag_.interference_terms++;
      }
    }
  }
}

double MatchingState::interference(int s, int v, int port_v, int from_u) const {
  if (cfg_->zero_interference) return 0.0;
  if (cfg_->mode == BeamMode::Steering) {
    if (update_ == InterferenceUpdate::FullTable) {
      return table_[s][static_cast<size_t>(v) * n_ + from_u];
    }
    const SnapshotGains& g = snap(s);
    double sum = 0.0;
    for (size_t i = 0; i < beam_field_[s].size(); ++i) {
      const ActiveBeam& b = beams_[i];
      if (b.sat == v || pair_matched(b.sat, v)) continue;
      const double f = beam_field_[s][i][v];
      if (f == 0.0) continue;
      sum += f * g.steered_gain_toward(v, from_u, b.sat);
    }
    return sum;
  }
  const size_t vs = static_cast<size_t>(v) * 2 * ppf_ + port_slot(port_v, ppf_);
  if (update_ == InterferenceUpdate::FullTable) {
    return table_[s][vs];  // row us = 0; every row carries the same bound
  }
  return interf_[s][vs];
}

}  // namespace islsim
