#ifndef PHOTONLINK_CONSTANTS_HPP
#define PHOTONLINK_CONSTANTS_HPP

#include <numbers>

// Physical constants (CODATA exact values) and the unit contract used
// throughout the library.
//
// Unit contract:
//   - user-facing frequencies are ordinary frequencies in Hz
//   - all internal computation uses angular frequencies in rad/s
//   - powers in W, currents in A, voltages in V, impedances in Ohm,
//     temperatures in K, times in s

namespace photonlink::constants {

/// Elementary charge [C].
inline constexpr double elementary_charge = 1.602176634e-19;

/// Reduced Planck constant [J s].
inline constexpr double hbar = 1.054571817e-34;

/// Boltzmann constant [J/K].
inline constexpr double boltzmann = 1.380649e-23;

/// Speed of light in vacuum [m/s].
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Ordinary frequency [Hz] -> angular frequency [rad/s].
inline constexpr double to_angular(double f_hz) { return two_pi * f_hz; }

/// Angular frequency [rad/s] -> ordinary frequency [Hz].
inline constexpr double from_angular(double omega) { return omega / two_pi; }

} // namespace photonlink::constants

#endif
