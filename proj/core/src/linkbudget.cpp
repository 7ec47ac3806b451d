// SPDX-License-Identifier: Apache-2.0
#include "islsim/linkbudget.hpp"

#include <algorithm>
#include <cmath>

namespace islsim {

namespace {

// Per-end gains of the pair at snapshot s with the given ports. Steering
// beams are pointed exactly, so each side contributes K^2 while the peer
// stays on the chosen face and 0 once it leaves it.
inline void pair_gains(const MatchingState& st, int s, int u, int port_u, int v,
                       int port_v, double& gu, double& gv) {
  const SnapshotGains& g = st.snap(s);
  if (st.mode() == BeamMode::Steering) {
    if (!g.los(u, v)) {
      gu = gv = 0.0;
      return;
    }
    const double k2 = static_cast<double>(g.array().ports) * g.array().ports;
    gu = face_visible(g.rel(u, v), port_u) ? k2 : 0.0;
    gv = face_visible(g.rel(v, u), port_v) ? k2 : 0.0;
    return;
  }
  gu = g.port_gain(u, v, port_u);
  gv = g.port_gain(v, u, port_v);
}

}  // namespace

LinkBudgetContext link_budget_context(const ConstellationConfig& cfg) {
  LinkBudgetContext ctx;
  ctx.tx_power_w = cfg.tx_power_w;
  ctx.bandwidth_hz = cfg.bandwidth_hz;
  ctx.noise_temp_k = cfg.noise_temp_k;
  ctx.carrier_hz = cfg.carrier_hz;
  ctx.sinr_margin = cfg.sinr_margin;
  return ctx;
}

double shannon_rate_bps(const LinkBudgetContext& ctx, double sinr_t, double sinr_tdt) {
  const double eff = std::min(sinr_t, sinr_tdt) / ctx.sinr_margin;
  return eff > 0.0 ? ctx.bandwidth_hz * std::log2(1.0 + eff) : 0.0;
}

double conditional_snr(const MatchingState& st, int s, int u, int port_u, int v,
                       int port_v) {
  const double rho = st.snap(s).rho(u, v);
  if (rho == 0.0) return 0.0;
  double gu = 0.0, gv = 0.0;
  pair_gains(st, s, u, port_u, v, port_v, gu, gv);
  return rho * gu * gv;
}

double snr(const MatchingState& st, int s, int u, int port_u, int v, int port_v) {
  if (!st.port_used(u, port_u) || !st.port_used(v, port_v)) return 0.0;
  return conditional_snr(st, s, u, port_u, v, port_v);
}

double interference_upper_bound(const MatchingState& st, int s, int v, int port_v,
                                int from_u) {
  return st.interference(s, v, port_v, from_u);
}

double sinr(const MatchingState& st, int s, int u, int port_u, int v, int port_v) {
  const double x = conditional_snr(st, s, u, port_u, v, port_v);
  if (x == 0.0) return 0.0;
  return x / (1.0 + st.interference(s, v, port_v, u));
}

RateSelection link_rate(const MatchingState& st, int u, int port_u, int v, int port_v) {
  RateSelection r;
  r.sinr_t = sinr(st, 0, u, port_u, v, port_v);
  r.sinr_tdt = sinr(st, 1, u, port_u, v, port_v);
  r.rate_bps = shannon_rate_bps(link_budget_context(st.config()), r.sinr_t, r.sinr_tdt);
  return r;
}

RateSelection link_rate_interference_free(const MatchingState& st, int u, int port_u,
                                          int v, int port_v) {
  RateSelection r;
  r.sinr_t = conditional_snr(st, 0, u, port_u, v, port_v);
  r.sinr_tdt = conditional_snr(st, 1, u, port_u, v, port_v);
  r.rate_bps = shannon_rate_bps(link_budget_context(st.config()), r.sinr_t, r.sinr_tdt);
  return r;
}

EdgeEvaluation edge_weight(const MatchingState& st, int u, int v) {
  st.diag().weight_evaluations++;
  EdgeEvaluation best;
  const double rho0 = st.snap(0).rho(u, v);
  const double rho1 = st.snap(1).rho(u, v);
  if (rho0 == 0.0 || rho1 == 0.0) return best;  // NLoS at an endpoint

  const LinkBudgetContext ctx = link_budget_context(st.config());
  const double inv_margin = 1.0 / ctx.sinr_margin;
  double best_score = 0.0;
  double best_euv = 0.0, best_evu = 0.0;

  auto consider = [&](int pu, int pv, double gu0, double gv0, double gu1, double gv1) {
    if (gu0 == 0.0 || gv0 == 0.0 || gu1 == 0.0 || gv1 == 0.0) return;
    const double snr0 = rho0 * gu0 * gv0;
    const double snr1 = rho1 * gu1 * gv1;
    const double e_uv = inv_margin * std::min(snr0 / (1.0 + st.interference(0, v, pv, u)),
                                              snr1 / (1.0 + st.interference(1, v, pv, u)));
    const double e_vu = inv_margin * std::min(snr0 / (1.0 + st.interference(0, u, pu, v)),
                                              snr1 / (1.0 + st.interference(1, u, pu, v)));
    // log2(1+a) + log2(1+b) is monotone in (1+a)(1+b).
    const double score = (1.0 + e_uv) * (1.0 + e_vu);
    const bool better =
        score > best_score ||
        (score == best_score && best.port_u != 0 &&
         (pu < best.port_u || (pu == best.port_u && pv < best.port_v)));
    if (score > 1.0 && better) {
      best_score = score;
      best.port_u = pu;
      best.port_v = pv;
      best_euv = e_uv;
      best_evu = e_vu;
    }
  };

  if (st.mode() == BeamMode::Steering) {
    const int du = st.snap(0).face_of(u, v);
    const int dv = st.snap(0).face_of(v, u);
    if (du == 0 || dv == 0) return best;
    const double k2 = static_cast<double>(st.snap(0).array().ports) * st.snap(0).array().ports;
    const double gu1 = face_visible(st.snap(1).rel(u, v), du) ? k2 : 0.0;
    const double gv1 = face_visible(st.snap(1).rel(v, u), dv) ? k2 : 0.0;
    consider(du, dv, k2, k2, gu1, gv1);
  } else {
    const int ppf = st.ports_per_face();
    const auto gu0 = st.snap(0).port_gains(u, v);
    const auto gu1 = st.snap(1).port_gains(u, v);
    const auto gv0 = st.snap(0).port_gains(v, u);
    const auto gv1 = st.snap(1).port_gains(v, u);
    for (int su = 0; su < 2 * ppf; ++su) {
      if (gu0[su] == 0.0 || gu1[su] == 0.0) continue;
      const int pu = slot_port(su, ppf);
      for (int sv = 0; sv < 2 * ppf; ++sv) {
        if (gv0[sv] == 0.0 || gv1[sv] == 0.0) continue;
        consider(pu, slot_port(sv, ppf), gu0[su], gv0[sv], gu1[su], gv1[sv]);
      }
    }
  }

  if (best.port_u != 0) {
    best.rate_uv_bps = ctx.bandwidth_hz * std::log2(1.0 + best_euv);
    best.rate_vu_bps = ctx.bandwidth_hz * std::log2(1.0 + best_evu);
    best.weight_bps = best.rate_uv_bps + best.rate_vu_bps;
  }
  return best;
}

}  // namespace islsim
