#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "casimir/electrolyte.hpp"
#include "casimir/material.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

/// Three-region geometry: dielectric half-space | electrolyte gap of width L |
/// slab of thickness d immersed in the same electrolyte.
struct LayerStack {
    Material half_space;
    ElectrolyteGap gap;
    double separation;  // L (m)
    Material slab;
    double thickness;   // d (m)

    LayerStack(Material half_space_, ElectrolyteGap gap_, double separation_L,
               Material slab_, double thickness_d);

    double temperature() const { return gap.temperature(); }
};

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-30;  // J/m^2
    int max_subdivisions = 64;
    double matsubara_tail_tol = 1e-9;

    void validate() const;  // rel_tol in (0, 1e-3], max_subdivisions >= 16
};

/// Free energies per unit area. f_n holds each n >= 1 term once; the +-n
/// pairing doubles them in the total:
///   total = f0_tm + f0_long + 2 sum_n f_n.
struct EnergyBreakdown {
    double f0_tm = 0.0;    // J/m^2, < 0
    double f0_long = 0.0;  // J/m^2, >= 0
    std::vector<std::pair<int, double>> f_n;
    double total = 0.0;
    double hamaker_over_kBT = 0.0;
    int n_max_used = 0;
};

enum class EnergySelector { Total, TotalMinusF0Tm, ZeroFrequencyOnly };

/// Integration variable for the k-integral: the scaled exponent u = 2 kappa3 L
/// (production path) or the raw transverse wavevector (validation path).
enum class IntegrationVariable { ScaledExponent, TransverseK };

/// Finite-frequency term (n >= 1): two local polarization channels, with the
/// ionic Drude term dropped from the gap response.
double free_energy_n(const LayerStack& stack, const QuadratureSpec& spec, int n,
                     IntegrationVariable var = IntegrationVariable::ScaledExponent);

/// Universal zero-frequency TM term -k_B T zeta(3) / (16 pi L^2), from the
/// closed form (both zero-frequency TM reflections are exactly -1).
double free_energy_zero_tm(const LayerStack& stack);

/// Same quantity by direct quadrature with unit reflection product (validation).
double zero_tm_by_quadrature(double L, double temperature_K, const QuadratureSpec& spec);

/// Zero-frequency longitudinal term: screened over the Debye length, > 0
/// (repulsive) since the reflection product is negative.
double free_energy_zero_long(const LayerStack& stack, const QuadratureSpec& spec);

/// Full Matsubara-summed interaction free energy per unit area.
EnergyBreakdown total_free_energy(const LayerStack& stack, const QuadratureSpec& spec);

/// DLP comparison mode (ions treated locally): the zero-frequency TM term uses
/// r1_pp(0) = -1 and the local Fresnel limit for the metal side, giving a
/// repulsive contribution; no longitudinal channel exists. n >= 1 terms are
/// unchanged.
double free_energy_zero_tm_local_water(const LayerStack& stack,
                                       const QuadratureSpec& spec);
EnergyBreakdown total_free_energy_local_water(const LayerStack& stack,
                                              const QuadratureSpec& spec);

/// H/(k_B T) = -12 pi L^2 F / (A k_B T).
double hamaker_from_energy(double free_energy_per_area, double L, double temperature_K);

double hamaker(const LayerStack& stack, const QuadratureSpec& spec,
               EnergySelector selector);
double hamaker_from_breakdown(const EnergyBreakdown& b, double L, double temperature_K,
                              EnergySelector selector);

/// Validator: the free energy from the full 3x3 round-trip log-determinant with
/// nonlocal reflection blocks and the diagonal translation matrix
/// diag(e^{-kappa3 L}, e^{-kappa3 L}, e^{-kappa_ell L}). Must agree with the
/// decoupled formulas at n >= 1 and, on a descending xi sequence, with the
/// zero-frequency closed forms.
double logdet_free_energy_at_xi(const LayerStack& stack, const QuadratureSpec& spec,
                                double xi);
double logdet_roundtrip(const LayerStack& stack, const QuadratureSpec& spec, int n);

namespace detail {

/// log det(1 - M), M = R1 T R2 T with T = diag(t_p, t_p, t_ell), evaluated
/// through the block factorization with log1p stabilization.
double log_det_round_trip(const ReflectionBlock& R1, const ReflectionBlock& R2,
                          double t_p, double t_ell);

/// (k_B T / (16 pi L^2)) Int_{u0}^{u0+40} u G(k(u), u) du with u = 2 L q(k),
/// q(k) = sqrt(k^2 + q0^2). G receives the transverse wavevector and u; the
/// translation factor for one round trip is exp(-u).
double scaled_exponent_integral(double L, double temperature_K, double q0,
                                const std::function<double(double, double)>& G,
                                const QuadratureSpec& spec, int matsubara_n);

/// Zero-frequency longitudinal quadrature with a caller-supplied dielectric-side
/// coefficient (the slab side is the exact -1); used for oracle saturation tests.
double zero_long_integral(double L, double temperature_K, double lambda_D,
                          const std::function<double(double)>& r1_ll,
                          const QuadratureSpec& spec);

/// Ideal-mirror two-polarization energy at one frequency: unit reflection
/// product in both channels, gap permittivity eps3.
double ideal_mirror_energy(double xi, double L, double eps3, double temperature_K,
                           const QuadratureSpec& spec);

}  // namespace detail

}  // namespace casimir
