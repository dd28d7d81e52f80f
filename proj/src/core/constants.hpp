#pragma once

namespace collapse::constants {

// Fixed CODATA values; deliberately not configurable.
inline constexpr double hbar = 1.054571817e-34;      // J*s
inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double sigma_SB = 5.670374419e-8;   // W/(m^2 K^4)
inline constexpr double m_amu = 1.66053906660e-27;   // kg, nucleon reference mass
inline constexpr double e_charge = 1.602176634e-19;  // C

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// Molecular hydrogen, the dominant residual gas in cryogenic UHV.
inline constexpr double m_H2 = 3.3476e-27;  // kg

}  // namespace collapse::constants
