#pragma once

// Unit conventions used throughout: time in us, angular frequency in rad/us,
// length in um, C6 in rad/us*um^6.  Laboratory "2pi x MHz" values convert as
// omega[rad/us] = 2*pi * f[MHz].

#include <cmath>

namespace rydcz::units {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// SI constants
inline constexpr double k_boltzmann = 1.380649e-23;      // J/K
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double bohr_radius = 5.29177210903e-11; // m
inline constexpr double vacuum_impedance = 377.0;        // Ohm
inline constexpr double mass_rb87 = 1.4431e-25;          // kg

inline double mhz_to_rad_us(double f_mhz) { return two_pi * f_mhz; }
inline double rad_us_to_mhz(double w) { return w / two_pi; }

// decay rate (rad/us) from lifetime
inline double rate_from_lifetime_us(double tau_us) { return 1.0 / tau_us; }
inline double rate_from_lifetime_ns(double tau_ns) { return 1.0e3 / tau_ns; }

// one-dimensional thermal speed sqrt(kB T / m), returned in um/us (== m/s)
inline double thermal_speed(double temperature_k, double mass_kg) {
    return std::sqrt(k_boltzmann * temperature_k / mass_kg);
}

inline double wavevector_um(double lambda_um) { return two_pi / lambda_um; }

}  // namespace rydcz::units
