// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace islsim {

// Physical constants. Distances in the geometry layer are in km, everything
// RF-related is SI.
inline constexpr double kEarthRadiusKm = 6371.0;        // spherical Earth
inline constexpr double kMuEarthM3S2 = 3.986004418e14;  // gravitational parameter
inline constexpr double kSpeedOfLightMS = 299792458.0;
inline constexpr double kBoltzmannJK = 1.380649e-23;

}  // namespace islsim
