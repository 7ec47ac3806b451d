// SPDX-License-Identifier: Apache-2.0
#include "islsim/gain_cache.hpp"

#include <cmath>

#include "islsim/linkbudget.hpp"

namespace islsim {

SnapshotGains::SnapshotGains(std::vector<SatelliteState> states,
                             const ConstellationConfig& cfg)
    : n_(static_cast<int>(states.size())),
      array_(array_config(cfg)),
      states_(std::move(states)) {
  ppf_ = islsim::ports_per_face(array_);
  rel_.resize(static_cast<size_t>(n_) * n_);
  rho_.assign(static_cast<size_t>(n_) * n_, 0.0);
  const bool tabulate = array_.mode != BeamMode::Steering;
  if (tabulate) {
    gains_.assign(static_cast<size_t>(n_) * n_ * 2 * ppf_, 0.0);
  }

  const LinkBudgetContext ctx = link_budget_context(cfg);
  const double noise = ctx.noise_w();
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      const double d_km = (states_[v].r - states_[u].r).norm();
      if (d_km == 0.0) continue;  // leave as NLoS
      const double limit =
          slant_range_limit_km(states_[u].altitude_km(), states_[v].altitude_km());
      if (d_km > limit) continue;
      const double rho = ctx.tx_power_w / (noise * fspl_linear(d_km, ctx.carrier_hz));
      rho_[idx(u, v)] = rho;
      rho_[idx(v, u)] = rho;
      rel_[idx(u, v)] = relative_geometry(states_[u], states_[v]);
      rel_[idx(v, u)] = relative_geometry(states_[v], states_[u]);
      if (tabulate) {
        islsim::port_gains(rel_[idx(u, v)], array_,
                           {&gains_[idx(u, v) * 2 * ppf_], static_cast<size_t>(2 * ppf_)});
        islsim::port_gains(rel_[idx(v, u)], array_,
                           {&gains_[idx(v, u) * 2 * ppf_], static_cast<size_t>(2 * ppf_)});
      }
    }
  }
}

double SnapshotGains::steered_gain_toward(int from, int target, int to) const {
  const int face = face_of(from, target);
  if (face == 0 || !los(from, to)) return 0.0;
  return islsim::steered_gain(rel(from, target), rel(from, to), face, array_);
}

int SnapshotGains::face_of(int u, int v) const {
  if (!los(u, v)) return 0;
  const double c = std::cos(rel(u, v).phi);
  return c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
}

}  // namespace islsim
