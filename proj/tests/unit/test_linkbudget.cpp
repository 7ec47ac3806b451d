// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "islsim/linkbudget.hpp"
#include "islsim/matching.hpp"

using namespace islsim;

namespace {

constexpr double kPi = std::numbers::pi;

// Rotation taking the canonical direction (sin t cos p, sin t sin p, cos t)
// onto `want`, applied to the canonical axes; gives a body frame in which the
// peer appears at exactly (phi, theta).
void frame_showing(SatelliteState& s, const Vec3& peer, double phi, double theta) {
  const Vec3 d = (peer - s.r).normalized();
  const Vec3 e{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta)};
  const Vec3 axis_raw = e.cross(d);
  const double sin_a = axis_raw.norm();
  const double cos_a = e.dot(d);
  auto rotate = [&](const Vec3& x) {
    if (sin_a < 1e-15) {
      if (cos_a > 0.0) return x;
      // 180 degrees about any axis orthogonal to e.
      const Vec3 h = std::abs(e.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      const Vec3 k = (h - e * h.dot(e)).normalized();
      return k * (2.0 * k.dot(x)) - x;
    }
    const Vec3 k = axis_raw * (1.0 / sin_a);
    return x * cos_a + k.cross(x) * sin_a + k * (k.dot(x) * (1.0 - cos_a));
  };
  s.e_pitch = rotate(Vec3{1, 0, 0});
  s.e_roll = rotate(Vec3{0, 1, 0});
  s.e_zenith = rotate(Vec3{0, 0, 1});
}

// Two satellites 1000 km apart, each seeing the other at (phi, theta) on its
// own +pitch face.
std::vector<SatelliteState> symmetric_pair(double phi, double theta,
                                           double dist_km = 1000.0) {
  SatelliteState u, v;
  u.id = 0;
  u.plane = 0;
  u.r = {kEarthRadiusKm + 629.0, 0.0, 0.0};
  v.id = 1;
  v.plane = 1;
  v.r = u.r + Vec3{0.3, 0.5, 0.812403840463596}.normalized() * dist_km;
  frame_showing(u, v.r, phi, theta);
  frame_showing(v, u.r, phi, theta);
  return {u, v};
}

ConstellationConfig pair_config(BeamMode mode, int ports) {
  ConstellationConfig cfg;
  cfg.planes = 2;
  cfg.satellites = 2;
  cfg.mode = mode;
  cfg.ports = ports;
  return cfg;
}

}  // namespace

TEST_CASE("noise floor and single-link budget") {
  const ConstellationConfig cfg = pair_config(BeamMode::Steering, 4);
  const LinkBudgetContext ctx = link_budget_context(cfg);

  // kB TN B for 200 MHz at 324.81 K: ~8.97e-13 W (-90.5 dBm).
  CHECK(ctx.noise_w() == doctest::Approx(8.968972033800001e-13).epsilon(1e-12));

  // Both ends steered, K = 4, 1000 km, 20 GHz, 10 W:
  // 10 * 256 / (8.969e-13 * 7.0281e17) = 4.0612e-3 (-23.9 dB).
  const auto states = symmetric_pair(0.3, 100.0 * kPi / 180.0);
  SnapshotGains snap(states, cfg);
  MatchingState st(snap, snap, cfg);
  const double s = conditional_snr(st, 0, 0, 1, 1, 1);
  CHECK(s == doctest::Approx(0.0040612430575597816).epsilon(1e-9));

  // Endpoint-min Shannon rate at that SINR: ~1.17 Mbit/s.
  const RateSelection r = link_rate(st, 0, 1, 1, 1);
  CHECK(r.sinr_t == doctest::Approx(s).epsilon(1e-12));
  CHECK(r.sinr_tdt == doctest::Approx(s).epsilon(1e-12));
  CHECK(r.rate_bps == doctest::Approx(1169453.9295999685).epsilon(1e-9));
}

TEST_CASE("snr scaling in Pt, B, TN") {
  const ConstellationConfig base = pair_config(BeamMode::Steering, 4);
  const auto states = symmetric_pair(0.2, 1.8);

  auto snr_of = [&](const ConstellationConfig& cfg) {
    SnapshotGains snap(states, cfg);
    MatchingState st(snap, snap, cfg);
    return conditional_snr(st, 0, 0, 1, 1, 1);
  };

  const double s0 = snr_of(base);
  ConstellationConfig cfg = base;
  cfg.tx_power_w *= 2.0;
  CHECK(snr_of(cfg) / s0 == doctest::Approx(2.0).epsilon(1e-12));
  cfg = base;
  cfg.bandwidth_hz *= 4.0;
  CHECK(snr_of(cfg) / s0 == doctest::Approx(0.25).epsilon(1e-12));
  cfg = base;
  cfg.noise_temp_k *= 3.0;
  CHECK(snr_of(cfg) / s0 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("indicator products annihilate") {
  const ConstellationConfig cfg = pair_config(BeamMode::Butler, 4);
  const auto states = symmetric_pair(0.25, 100.0 * kPi / 180.0);
  SnapshotGains snap(states, cfg);
  MatchingState st(snap, snap, cfg);

  // Nothing committed: indicator-weighted SNR is zero, conditional is not.
  CHECK(snr(st, 0, 0, 1, 1, 1) == 0.0);
  CHECK(conditional_snr(st, 0, 0, 1, 1, 1) > 0.0);

  st.commit(0, 1, 1, 1);
  CHECK(snr(st, 0, 0, 1, 1, 1) == conditional_snr(st, 0, 0, 1, 1, 1));
  CHECK(snr(st, 0, 0, 2, 1, 1) == 0.0);  // port 2 not selected
}

TEST_CASE("interference upper bound matches a brute-force sum") {
  // 3 x 2 constellation, commit two links, then compare every receiver port
  // against a direct transcription of the sum.
  ConstellationConfig cfg;
  cfg.planes = 3;
  cfg.satellites = 6;
  cfg.mode = BeamMode::Butler;
  cfg.ports = 4;
  cfg.phase0_rad = {1.37236084197236, 1.66923181161743, 1.9};
  const Constellation c = build_constellation(cfg, 0);
  SnapshotGains snap0(propagate(c, 0.0), cfg);
  SnapshotGains snap1(propagate(c, 30.0), cfg);
  MatchingState st(snap0, snap1, cfg);

  auto brute = [&](int s, int v, int port_v) {
    double sum = 0.0;
    for (int i = 0; i < st.count(); ++i) {
      if (i == v) continue;
      const double excl = st.pair_matched(i, v) ? 0.0 : 1.0;
      for (int slot = 0; slot < 2 * st.ports_per_face(); ++slot) {
        const int port = slot_port(slot, st.ports_per_face());
        if (!st.port_used(i, port)) continue;
        sum += excl * conditional_snr(st, s, i, port, v, port_v);
      }
    }
    return sum;
  };

  // Empty matching: all bounds zero.
  for (int v = 0; v < 6; ++v) {
    CHECK(interference_upper_bound(st, 0, v, 1, (v + 1) % 6) == 0.0);
  }

  const auto edges = enumerate_feasible_edges(snap0, snap1, cfg);
  REQUIRE(edges.size() >= 2);
  st.commit(edges[0].u, edges[0].port_u, edges[0].v, edges[0].port_v);
  bool committed_second = false;
  for (const CandidateEdge& e : edges) {
    if (e.u != edges[0].u && e.v != edges[0].u && e.u != edges[0].v && e.v != edges[0].v) {
      st.commit(e.u, e.port_u, e.v, e.port_v);
      committed_second = true;
      break;
    }
  }
  CHECK(committed_second);

  for (int s = 0; s < 2; ++s) {
    for (int v = 0; v < 6; ++v) {
      for (int slot = 0; slot < 2 * st.ports_per_face(); ++slot) {
        const int port = slot_port(slot, st.ports_per_face());
        const double got = interference_upper_bound(st, s, v, port, (v + 1) % 6);
        const double want = brute(s, v, port);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("sinr against snr") {
  const ConstellationConfig cfg = pair_config(BeamMode::Butler, 2);
  const auto states = symmetric_pair(0.4, 100.0 * kPi / 180.0);
  SnapshotGains snap(states, cfg);
  MatchingState st(snap, snap, cfg);

  // No interference: SINR == conditional SNR exactly.
  const double s = conditional_snr(st, 0, 0, 1, 1, 1);
  CHECK(sinr(st, 0, 0, 1, 1, 1) == s);
  CHECK(interference_upper_bound(st, 0, 1, 1, 0) == 0.0);
}

TEST_CASE("rate selection edge cases") {
  const ConstellationConfig cfg = pair_config(BeamMode::Steering, 4);
  const auto states = symmetric_pair(0.3, 1.75);
  SnapshotGains snap(states, cfg);

  SUBCASE("margin divides the effective SINR before the log") {
    ConstellationConfig margin_cfg = cfg;
    margin_cfg.sinr_margin = 2.0;  // 3 dB
    SnapshotGains msnap(states, margin_cfg);
    MatchingState st(snap, snap, cfg);
    MatchingState mst(msnap, msnap, margin_cfg);
    const double s = conditional_snr(st, 0, 0, 1, 1, 1);
    const RateSelection r = link_rate(mst, 0, 1, 1, 1);
    CHECK(r.rate_bps ==
          doctest::Approx(cfg.bandwidth_hz * std::log2(1.0 + s / 2.0)).epsilon(1e-12));
  }

  SUBCASE("NLoS at one endpoint zeroes the rate") {
    auto far = states;
    far[1].r = {-(kEarthRadiusKm + 629.0), 0.0, 0.0};  // antipodal at t+dt
    SnapshotGains snap_far(far, cfg);
    MatchingState st(snap, snap_far, cfg);
    const RateSelection r = link_rate(st, 0, 1, 1, 1);
    CHECK(r.sinr_t > 0.0);
    CHECK(r.sinr_tdt == 0.0);
    CHECK(r.rate_bps == 0.0);
  }
}

TEST_CASE("edge weight: symmetric pair doubles the directional rate") {
  const ConstellationConfig cfg = pair_config(BeamMode::Butler, 4);
  const auto states = symmetric_pair(0.25, 100.0 * kPi / 180.0);
  SnapshotGains snap(states, cfg);
  MatchingState st(snap, snap, cfg);
  const EdgeEvaluation ev = edge_weight(st, 0, 1);
  REQUIRE(ev.port_u != 0);
  CHECK(ev.rate_uv_bps == doctest::Approx(ev.rate_vu_bps).epsilon(1e-12));
  CHECK(ev.weight_bps == doctest::Approx(2.0 * ev.rate_uv_bps).epsilon(1e-12));
}

TEST_CASE("edge weight: exhaustive port enumeration oracle") {
  // Peer sits at the beam-1 azimuth peak (sin phi = 1/4) at the fixed polar
  // angle on both ends; the argmax must pick the two beam-1 ports.
  const ConstellationConfig cfg = pair_config(BeamMode::Butler, 4);
  const double phi_peak = std::asin(0.25);
  const auto states = symmetric_pair(phi_peak, 100.0 * kPi / 180.0);
  SnapshotGains snap(states, cfg);
  MatchingState st(snap, snap, cfg);

  const EdgeEvaluation ev = edge_weight(st, 0, 1);
  CHECK(ev.port_u == 1);
  CHECK(ev.port_v == 1);

  // Independent oracle: rates from first principles over all port pairs.
  const ArrayConfig arr = array_config(cfg);
  const LinkBudgetContext ctx = link_budget_context(cfg);
  const RelativeGeometry uv = relative_geometry(states[0], states[1]);
  const RelativeGeometry vu = relative_geometry(states[1], states[0]);
  const double rho =
      ctx.tx_power_w / (ctx.noise_w() * fspl_linear(uv.distance_km, ctx.carrier_hz));
  double best = -1.0;
  for (int pu = -4; pu <= 4; ++pu) {
    if (pu == 0) continue;
    for (int pv = -4; pv <= 4; ++pv) {
      if (pv == 0) continue;
      const double gu =
          beam_gain(uv, butler_beam(std::abs(pu), arr), pu > 0 ? 1 : -1, arr);
      const double gv =
          beam_gain(vu, butler_beam(std::abs(pv), arr), pv > 0 ? 1 : -1, arr);
      const double s = rho * gu * gv;
      const double w = 2.0 * ctx.bandwidth_hz * std::log2(1.0 + s);
      best = std::max(best, w);
    }
  }
  CHECK(ev.weight_bps == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("edge weight: steering uses one exactly pointed pair per face") {
  const ConstellationConfig cfg = pair_config(BeamMode::Steering, 8);
  const auto states = symmetric_pair(-0.35, 1.8);
  SnapshotGains snap(states, cfg);
  MatchingState st(snap, snap, cfg);
  const EdgeEvaluation ev = edge_weight(st, 0, 1);
  REQUIRE(ev.port_u != 0);
  CHECK(std::abs(ev.port_u) == 1);
  CHECK(std::abs(ev.port_v) == 1);

  const LinkBudgetContext ctx = link_budget_context(cfg);
  const double rho = ctx.tx_power_w /
                     (ctx.noise_w() * fspl_linear(relative_geometry(states[0], states[1]).distance_km,
                                                  ctx.carrier_hz));
  const double s = rho * 64.0 * 64.0;  // K^2 per end
  CHECK(ev.weight_bps ==
        doctest::Approx(2.0 * ctx.bandwidth_hz * std::log2(1.0 + s)).epsilon(1e-12));
}

TEST_CASE("interference monotonicity under commits") {
  ConstellationConfig cfg;
  cfg.planes = 2;
  cfg.satellites = 8;
  cfg.mode = BeamMode::Butler;
  cfg.ports = 2;
  cfg.phase0_rad = {1.37236084197236, 1.66923181161743};
  const Constellation c = build_constellation(cfg, 0);
  SnapshotGains snap0(propagate(c, 0.0), cfg);
  SnapshotGains snap1(propagate(c, 30.0), cfg);
  MatchingState st(snap0, snap1, cfg);

  const auto edges = enumerate_feasible_edges(snap0, snap1, cfg);
  std::vector<double> previous(st.count() * 2 * st.ports_per_face(), 0.0);
  for (const CandidateEdge& e : edges) {
    if (st.face_used(e.u, e.port_u > 0 ? 1 : -1)) continue;
    if (st.face_used(e.v, e.port_v > 0 ? 1 : -1)) continue;
    if (st.pair_matched(e.u, e.v)) continue;
    st.commit(e.u, e.port_u, e.v, e.port_v);
    // Bounds never decrease for receivers not involved in the new pair.
    for (int v = 0; v < st.count(); ++v) {
      if (v == e.u || v == e.v) continue;
      for (int slot = 0; slot < 2 * st.ports_per_face(); ++slot) {
        const int port = slot_port(slot, st.ports_per_face());
        const double now = interference_upper_bound(st, 0, v, port, (v + 1) % st.count());
        CHECK(now >= previous[v * 2 * st.ports_per_face() + slot] - 1e-18);
        previous[v * 2 * st.ports_per_face() + slot] = now;
      }
    }
  }
}

TEST_CASE("endpoint-min rate never beats either endpoint alone") {
  const ConstellationConfig cfg = pair_config(BeamMode::Butler, 4);
  const auto states_t = symmetric_pair(0.22, 1.72);
  auto states_tdt = states_t;
  states_tdt[1].r = states_t[0].r + (states_t[1].r - states_t[0].r) * 1.8;
  SnapshotGains s0(states_t, cfg);
  SnapshotGains s1(states_tdt, cfg);
  MatchingState st(s0, s1, cfg);
  const LinkBudgetContext ctx = link_budget_context(cfg);
  const RateSelection r = link_rate(st, 0, 1, 1, 1);
  CHECK(r.rate_bps <= ctx.bandwidth_hz * std::log2(1.0 + r.sinr_t) + 1e-9);
  CHECK(r.rate_bps <= ctx.bandwidth_hz * std::log2(1.0 + r.sinr_tdt) + 1e-9);
  CHECK(r.sinr_tdt < r.sinr_t);  // the stretched endpoint is the binding one
}

TEST_CASE("edge weight is symmetric under argument swap") {
  ConstellationConfig cfg;
  cfg.planes = 3;
  cfg.satellites = 9;
  cfg.mode = BeamMode::Butler;
  cfg.ports = 4;
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    const Constellation c = build_constellation(cfg, seed);
    SnapshotGains s0(propagate(c, 0.0), cfg);
    SnapshotGains s1(propagate(c, 30.0), cfg);
    MatchingState st(s0, s1, cfg);
    for (int u = 0; u < 9; ++u) {
      for (int v = u + 1; v < 9; ++v) {
        if (s0.state(u).plane == s0.state(v).plane) continue;
        const EdgeEvaluation a = edge_weight(st, u, v);
        const EdgeEvaluation b = edge_weight(st, v, u);
        CHECK(a.weight_bps == b.weight_bps);
        CHECK(a.port_u == b.port_v);
        CHECK(a.port_v == b.port_u);
        CHECK(a.rate_uv_bps == b.rate_vu_bps);
      }
    }
  }
}
