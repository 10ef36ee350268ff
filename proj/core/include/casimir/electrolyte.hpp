#pragma once

#include "casimir/material.hpp"

namespace casimir {

/// Salted water filling the gap: transverse response eps_b + ionic Drude term,
/// nonlocal longitudinal response, Debye screening.
///
/// The ion plasma frequency is derived as omega_p3 = sqrt(eps_b0) v_th / lambda_D
/// with v_th = sqrt(k_B T / m), which makes kappa_ell(0) = sqrt(k^2 + 1/lambda_D^2)
/// an exact identity. Immutable after construction; evaluation is pure.
class ElectrolyteGap {
public:
    ElectrolyteGap(Material water, double lambda_D, double gamma_ions,
                   double ion_mass, double temperature_K);

    const Material& water() const { return water_; }
    double lambda_D() const { return lambda_D_; }
    double gamma_ions() const { return gamma_ions_; }
    double ion_mass() const { return ion_mass_; }
    double temperature() const { return temperature_; }

    double thermal_velocity() const { return v_th_; }
    double plasma_frequency() const { return omega_p3_; }
    double eps_b0() const { return eps_b0_; }

    /// Pure-water permittivity eps_b(i xi).
    double eps_b(double xi) const { return water_.eval(xi); }

    /// Ionic Drude term omega_p3^2 / (xi (xi + gamma_3)); diverges at xi == 0.
    double ion_drude_term(double xi) const;

    /// Transverse permittivity eps_3(i xi) = eps_b(i xi) + ionic Drude term.
    double eps_transverse(double xi) const;

    /// Longitudinal permittivity eps_ell(i xi, K).
    double eps_longitudinal(double xi, double K) const;

    /// Same, parametrized by K^2 (which is negative for evanescent longitudinal
    /// modes; the dispersion relation eps_ell = 0 has its root at
    /// K^2 = k^2 - kappa_ell^2).
    double eps_longitudinal_k2(double xi, double K_squared) const;

private:
    Material water_;
    double lambda_D_;
    double gamma_ions_;
    double ion_mass_;
    double temperature_;
    // derived, cached
    double eps_b0_;
    double v_th_;
    double omega_p3_;
};

/// SI Debye length sqrt(eps0 eps_b0 k_B T / (N e^2)); N counts all ions per m^3.
double debye_length_from_concentration(double N, double eps_b0, double temperature_K);

/// Inverse map: total ion number density giving a prescribed Debye length.
double concentration_from_debye_length(double lambda_D, double eps_b0,
                                       double temperature_K);

/// Propagation constants at one (xi, k) node. All quantities are real on the
/// imaginary frequency axis; K3/K2/Kell are the total-wavevector magnitudes
/// sqrt(kappa^2 - k^2) entering the amplitude normalizations.
struct WaveKinematics {
    double xi = 0.0;
    double k = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    double kappa_ell = 0.0;
    double K3 = 0.0;
    double K2 = 0.0;
    double Kell = 0.0;
};

/// Fills every propagation constant for the three-region stack at (xi, k).
/// eps1 and eps2 are the half-space and slab permittivities at i*xi (ignored
/// at xi == 0, where all transverse kappas reduce to k).
WaveKinematics kinematics(const ElectrolyteGap& gap, double eps1, double eps2,
                          double xi, double k);

}  // namespace casimir
