#pragma once

#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {

struct Temperature {
    double kelvin;
};

struct MatsubaraFrequency {
    int index;   // n >= 0
    double xi;   // rad/s; xi == 0 iff index == 0
};

/// Spacing of the Matsubara grid, 2 pi k_B T / hbar.
inline double matsubara_spacing(double temperature_K) {
    if (temperature_K <= 0.0) throw std::domain_error("matsubara: T must be > 0");
    return 2.0 * constants::pi * constants::k_B * temperature_K / constants::hbar;
}

/// n-th Matsubara frequency xi_n = 2 pi n k_B T / hbar.
/// xi is computed as n * spacing so that linearity in n is exact.
inline MatsubaraFrequency matsubara(int n, double temperature_K) {
    if (n < 0) throw std::domain_error("matsubara: n must be >= 0");
    return {n, static_cast<double>(n) * matsubara_spacing(temperature_K)};
}

}  // namespace casimir
