#pragma once

#include <stdexcept>

namespace casimir {

// CODATA 2018, SI. Fixed at build time, never user-configurable.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c_light = 299792458.0;           // m/s
inline constexpr double k_B = 1.380649e-23;              // J/K
inline constexpr double e_charge = 1.602176634e-19;      // C
inline constexpr double eps0 = 8.8541878128e-12;         // F/m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double zeta3 = 1.2020569031595942854;   // Apery's constant
}  // namespace constants

/// Photon energy in eV -> angular frequency in rad/s.
inline double ev_to_angular(double value_ev) {
    if (value_ev < 0.0) throw std::domain_error("ev_to_angular: negative energy");
    return value_ev * constants::e_charge / constants::hbar;
}

/// Angular frequency in rad/s -> photon energy in eV.
inline double angular_to_ev(double omega) {
    if (omega < 0.0) throw std::domain_error("angular_to_ev: negative frequency");
    return omega * constants::hbar / constants::e_charge;
}

}  // namespace casimir
