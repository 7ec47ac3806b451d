// SPDX-License-Identifier: Apache-2.0
#include "islsim/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace islsim {

namespace {

// Face of u that holds w at time t, from the cached geometry.
inline int face_at_t(const SnapshotGains& snap_t, int u, int w) {
  return snap_t.face_of(u, w);
}

MatchResult run_greedy(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                       std::vector<CandidateEdge> edges, const ConstellationConfig& cfg,
                       bool update_weights, InterferenceUpdate update) {
  MatchResult result;
  result.state = std::make_unique<MatchingState>(snap_t, snap_tdt, cfg, update);
  MatchingState& st = *result.state;

  std::vector<CandidateEdge> pruned_this_round;
  while (!edges.empty()) {
    st.diag().iterations++;

    // Step 5: heaviest edge, ties to the lexicographically smallest pair.
    size_t best = 0;
    for (size_t i = 1; i < edges.size(); ++i) {
      const CandidateEdge& e = edges[i];
      const CandidateEdge& b = edges[best];
      if (e.weight_bps > b.weight_bps ||
          (e.weight_bps == b.weight_bps && (e.u < b.u || (e.u == b.u && e.v < b.v)))) {
        best = i;
      }
    }
    const int u = edges[best].u;
    const int v = edges[best].v;

    // Step 6: re-derive the best port pair under the current bounds.
    const EdgeEvaluation ev = edge_weight(st, u, v);
    if (ev.port_u == 0) {
      // No viable port pair anymore; drop the edge.
      edges.erase(edges.begin() + best);
      continue;
    }

    // Step 7: faces from the chosen ports.
    const int du = ev.port_u > 0 ? 1 : -1;
    const int dv = ev.port_v > 0 ? 1 : -1;

    // Step 8: drop every pair that would reuse either chosen face at time t.
    // The removal is permanent even if the guard below fails.
    pruned_this_round.clear();
    for (size_t i = edges.size(); i-- > 0;) {
      const CandidateEdge& e = edges[i];
      const bool hits_u = (e.u == u && face_at_t(snap_t, u, e.v) == du) ||
                          (e.v == u && face_at_t(snap_t, u, e.u) == du);
      const bool hits_v = (e.u == v && face_at_t(snap_t, v, e.v) == dv) ||
                          (e.v == v && face_at_t(snap_t, v, e.u) == dv);
      if (hits_u || hits_v) {
        if (cfg.restore_on_guard_fail && !(e.u == u && e.v == v)) {
          pruned_this_round.push_back(e);
        }
        st.diag().pruned_edges++;
        edges.erase(edges.begin() + i);
      }
    }

    // Step 9: both faces must still be free.
    if (!st.face_used(u, du) && !st.face_used(v, dv)) {
      st.commit(u, ev.port_u, v, ev.port_v);
      result.links.push_back({u, v, ev.port_u, ev.port_v, 0.0, 0.0});
      if (update_weights) {
        // Optional step 13: refresh the remaining weights under the new bounds.
        for (CandidateEdge& e : edges) {
          const EdgeEvaluation w = edge_weight(st, e.u, e.v);
          e.weight_bps = w.weight_bps;
          e.port_u = w.port_u;
          e.port_v = w.port_v;
        }
        std::erase_if(edges, [](const CandidateEdge& e) { return e.port_u == 0; });
      }
    } else {
      st.diag().guard_failures++;
      if (cfg.restore_on_guard_fail) {
        // Experimental deviation: resurrect this round's collateral pruning.
        edges.insert(edges.end(), pruned_this_round.begin(), pruned_this_round.end());
      }
    }
  }

  // Closing step: price every link against the final bounds.
  for (MatchedLink& link : result.links) {
    const RateSelection uv = link_rate(st, link.u, link.port_u, link.v, link.port_v);
    const RateSelection vu = link_rate(st, link.v, link.port_v, link.u, link.port_u);
    link.rate_uv_bps = uv.rate_bps;
    link.rate_vu_bps = vu.rate_bps;
    result.sum_rate_bps += uv.rate_bps + vu.rate_bps;
    const RateSelection uv_free =
        link_rate_interference_free(st, link.u, link.port_u, link.v, link.port_v);
    const RateSelection vu_free =
        link_rate_interference_free(st, link.v, link.port_v, link.u, link.port_u);
    result.sum_rate_free_bps += uv_free.rate_bps + vu_free.rate_bps;
  }
  result.diag = st.diag();
  return result;
}

}  // namespace

std::vector<CandidateEdge> enumerate_feasible_edges(const SnapshotGains& snap_t,
                                                    const SnapshotGains& snap_tdt,
                                                    const ConstellationConfig& cfg) {
  const int n = snap_t.count();
  MatchingState empty(snap_t, snap_tdt, cfg);
  std::vector<CandidateEdge> edges;

  auto plane_pair_allowed = [&](int p, int q) {
    if (p == q) return false;
    if (cfg.all_plane_pairs) return true;
    const int lo = std::min(p, q), hi = std::max(p, q);
    if (hi - lo == 1) return true;
    return cfg.cross_seam && cfg.planes > 2 && lo == 0 && hi == cfg.planes - 1;
  };

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!plane_pair_allowed(snap_t.state(u).plane, snap_t.state(v).plane)) continue;
      if (!snap_t.los(u, v) || !snap_tdt.los(u, v)) continue;
      const EdgeEvaluation ev = edge_weight(empty, u, v);
      if (ev.port_u == 0 || ev.weight_bps <= 0.0) continue;
      edges.push_back({u, v, ev.weight_bps, ev.port_u, ev.port_v});
    }
  }
  return edges;  // (u, v) ascending by construction
}

MatchResult greedy_match(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                         std::vector<CandidateEdge> edges, const ConstellationConfig& cfg,
                         bool update_weights, InterferenceUpdate update) {
  if (cfg.mode == BeamMode::Steering) {
    throw std::invalid_argument("use greedy_match_steering for steering mode");
  }
  return run_greedy(snap_t, snap_tdt, std::move(edges), cfg, update_weights, update);
}

MatchResult greedy_match_steering(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                                  std::vector<CandidateEdge> edges,
                                  const ConstellationConfig& cfg, InterferenceUpdate update) {
  if (cfg.mode != BeamMode::Steering) {
    throw std::invalid_argument("greedy_match_steering needs steering mode");
  }
  // Steering always skips the optional weight refresh.
  return run_greedy(snap_t, snap_tdt, std::move(edges), cfg, false, update);
}

MatchResult run_matching(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                         const ConstellationConfig& cfg, InterferenceUpdate update) {
  auto edges = enumerate_feasible_edges(snap_t, snap_tdt, cfg);
  if (cfg.mode == BeamMode::Steering) {
    return greedy_match_steering(snap_t, snap_tdt, std::move(edges), cfg, update);
  }
  return greedy_match(snap_t, snap_tdt, std::move(edges), cfg, cfg.update_weights, update);
}

ValidationReport validate_matching(const std::vector<MatchedLink>& links,
                                   const MatchingState& st) {
  ValidationReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  const int ppf = st.ports_per_face();
  std::vector<int> face_links(static_cast<size_t>(st.count()) * 2, 0);
  for (const MatchedLink& link : links) {
    if (link.u == link.v) fail("self link " + std::to_string(link.u));
    if (st.snap(0).state(link.u).plane == st.snap(0).state(link.v).plane) {
      fail("intra-plane link " + std::to_string(link.u) + "-" + std::to_string(link.v));
    }
    for (auto [sat, port] : {std::pair{link.u, link.port_u}, std::pair{link.v, link.port_v}}) {
      if (port == 0 || std::abs(port) > ppf) {
        fail("satellite " + std::to_string(sat) + " has invalid port " + std::to_string(port));
        continue;
      }
      face_links[static_cast<size_t>(sat) * 2 + (port > 0)]++;
      if (!st.port_used(sat, port)) {
        fail("port indicator missing for satellite " + std::to_string(sat));
      }
    }
    if (!st.pair_matched(link.u, link.v) || !st.pair_matched(link.v, link.u)) {
      fail("pair indicator asymmetric for " + std::to_string(link.u) + "-" +
           std::to_string(link.v));
    }
  }
  for (int sat = 0; sat < st.count(); ++sat) {
    for (int f = 0; f < 2; ++f) {
      if (face_links[static_cast<size_t>(sat) * 2 + f] > 1) {
        fail("satellite " + std::to_string(sat) + " face " + (f ? "+1" : "-1") +
             " carries multiple links");
      }
    }
  }
  return report;
}

}  // namespace islsim
