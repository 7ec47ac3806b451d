// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "islsim/linkbudget.hpp"

namespace islsim {

/// Feasible inter-plane pair with its weight and best port pair, both
/// evaluated against the empty matching (step 3 of the algorithm).
struct CandidateEdge {
  int u = 0;
  int v = 0;
  double weight_bps = 0.0;
  int port_u = 0;
  int port_v = 0;
};

struct MatchedLink {
  int u = 0;
  int v = 0;
  int port_u = 0;
  int port_v = 0;
  double rate_uv_bps = 0.0;
  double rate_vu_bps = 0.0;
};

struct MatchResult {
  std::vector<MatchedLink> links;
  double sum_rate_bps = 0.0;       // both directions, final interference bounds
  double sum_rate_free_bps = 0.0;  // same links and ports, interference zeroed
  MatchDiagnostics diag;
  std::unique_ptr<MatchingState> state;  // final indicators and bounds
};

/// All pairs on neighboring planes (plus the seam pair when enabled, or every
/// plane pair with cfg.all_plane_pairs) that keep line of sight at t and
/// t + dt and have a nonzero weight. Sorted by (u, v).
std::vector<CandidateEdge> enumerate_feasible_edges(const SnapshotGains& snap_t,
                                                    const SnapshotGains& snap_tdt,
                                                    const ConstellationConfig& cfg);

/// Greedy matching with multiple beams: repeatedly selects the heaviest
/// remaining edge, re-derives its best port pair under the current
/// interference bounds, prunes the chosen faces, commits when both faces are
/// free, and finally prices every link against the end-state bounds.
/// `update_weights` enables the optional per-commit weight refresh.
MatchResult greedy_match(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                         std::vector<CandidateEdge> edges, const ConstellationConfig& cfg,
                         bool update_weights,
                         InterferenceUpdate update = InterferenceUpdate::Incremental);

/// Digital-beam-steering variant: one exactly pointed beam per face, port ==
/// face, and no weight refresh.
MatchResult greedy_match_steering(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                                  std::vector<CandidateEdge> edges,
                                  const ConstellationConfig& cfg,
                                  InterferenceUpdate update = InterferenceUpdate::Incremental);

/// Mode dispatch used by the harness.
MatchResult run_matching(const SnapshotGains& snap_t, const SnapshotGains& snap_tdt,
                         const ConstellationConfig& cfg,
                         InterferenceUpdate update = InterferenceUpdate::Incremental);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks face exclusivity, pair symmetry, the inter-plane property and
/// port/face sign consistency of a finished matching.
ValidationReport validate_matching(const std::vector<MatchedLink>& links,
                                   const MatchingState& st);

}  // namespace islsim
