// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "islsim/constellation.hpp"

namespace islsim {

/// Reads a flat key-value scenario file (keys named after the usual symbols:
/// P, N, delta, h1, delta_h, Pt, B, f, TN, dt, K, theta, d_e, mode, ...).
/// Angles are given in degrees and converted to radians here.
ConstellationConfig load_scenario(const std::string& path);

/// Writes the config back in the same key-value form (angles in degrees).
void save_scenario(const ConstellationConfig& cfg, std::ostream& out);

}  // namespace islsim
