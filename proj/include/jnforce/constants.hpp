#pragma once

namespace jnforce::constants {

inline constexpr double pi = 3.14159265358979323846;

// SI values
inline constexpr double k_boltzmann = 1.380649e-23;    // J/K
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double mu0 = 4.0e-7 * pi;             // H/m

inline constexpr double zeta3 = 1.2020569031595942854;  // zeta(3)

}  // namespace jnforce::constants
