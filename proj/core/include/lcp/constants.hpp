#pragma once

// Physical constants (SI, CODATA 2018 exact/recommended values) and unit
// conversion factors used throughout the library.

namespace lcp::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c_light = 299792458.0;           // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;     // F/m

inline constexpr double electron_volt = 1.602176634e-19; // J
// 1 eV of photon energy expressed as an angular frequency, rad/s
inline constexpr double ev_to_rad_s = electron_volt / hbar;

// 1 atomic unit of dipole polarizability, C m^2 / V
inline constexpr double polarizability_au = 1.64877727436e-41;

inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

} // namespace lcp::constants
