#pragma once

#include <cmath>
#include <utility>

#include "casimir/electrolyte.hpp"
#include "casimir/material.hpp"

namespace casimir {

/// exp(-x) with the underflow guard: any factor with x > 700 is exactly 0.
/// (e.g. the longitudinal translation factor at nonzero Matsubara frequencies,
/// which is suppressed on the thermal de Broglie scale.)
inline double exp_guard(double x) { return x > 700.0 ? 0.0 : std::exp(-x); }

/// Gap-side quantities entering the interface amplitudes at one (xi, k) node.
/// ion_term = eps3 - eps_b is carried analytically, never by subtraction.
struct GapSample {
    double k = 0.0;
    double kappa3 = 0.0;
    double kappa_ell = 0.0;
    double K3 = 0.0;
    double Kell = 0.0;
    double eps_b = 1.0;
    double eps_b0 = 1.0;
    double ion_term = 0.0;

    double eps3() const { return eps_b + ion_term; }
};

/// The local medium on the far side of the interface.
struct MediumSample {
    double eps = 1.0;
    double kappa = 0.0;
    double K = 0.0;
};

/// Builds the gap sample from kinematics (xi > 0).
GapSample gap_sample(const ElectrolyteGap& gap, const WaveKinematics& kin);

/// Single-interface amplitudes between the nonlocal gap and a local medium,
/// evaluated on the imaginary axis (every z-component continued k_j -> i kappa_j).
/// The longitudinal basis vector absorbs a factor i relative to the
/// real-frequency convention, so all stored amplitudes are real and the slab
/// composition and round-trip determinants use plain real arithmetic.
/// Primed amplitudes describe waves incident from inside the local medium.
struct InterfaceAmplitudes {
    double r_ss = 0.0;
    double r_pp = 0.0;
    double r_lp = 0.0;
    double t_pp = 0.0;
    double r_ll = 0.0;
    double r_pl = 0.0;
    double t_pl = 0.0;
    double r_pp_prime = 0.0;
    double t_lp_prime = 0.0;
    double t_pp_prime = 0.0;
    double r_ss_prime = 0.0;
};

InterfaceAmplitudes interface_amplitudes(const MediumSample& other, const GapSample& gap);

/// One surface's block-diagonal reflection matrix content: s decoupled from
/// the mixed {p, l} block.
struct ReflectionBlock {
    double rss = 0.0;
    double rpp = 0.0;
    double rpl = 0.0;
    double rlp = 0.0;
    double rll = 0.0;
};

/// Half-space surface: the single-interface amplitudes are the block.
ReflectionBlock half_space_block(const InterfaceAmplitudes& a);

/// Slab of local material immersed in the gap medium: sums the multiple
/// reflections, with round-trip factor exp(-2 kappa2 d) on the imaginary axis.
ReflectionBlock compose_slab(const InterfaceAmplitudes& a, double kappa2, double d);

/// Local-local Fresnel amplitudes (r_ss, r_pp) for waves incident from the gap.
/// Convention: r_pp = (eps_other kappa_gap - eps_gap kappa_other) / (...), so
/// that a diverging gap permittivity (ionic conduction at xi -> 0) gives
/// r_pp -> -1 on the dielectric side.
std::pair<double, double> fresnel_local(double eps_other, double kappa_other,
                                        double eps_gap, double kappa_gap);

/// Local symmetric-slab reflection r (1 - E) / (1 - r^2 E), E = exp(-2 kappa2 d).
double local_slab_reflection(double r_single, double kappa2, double d);

/// Zero-frequency closed forms for the dielectric half-space side:
/// (r_pp(0) = -1, r_ll(0) from the screened longitudinal constant).
std::pair<double, double> zero_freq_silica(double eps1_static, double eps_b0,
                                           double lambda_D, double k);

/// Zero-frequency closed forms for the metallic slab side: exactly (-1, -1)
/// for any k and thickness. Throws std::domain_error if the slab material has
/// no Drude term (the limits require eps2 ~ 1/xi).
std::pair<double, double> zero_freq_metal(const ElectrolyteGap& gap,
                                          const Material& metal);

/// Zero-frequency limit of the *local* TM Fresnel coefficient at the
/// gap-metal interface, (1 - x)/(1 + x) with
/// x = (omega_p3^2/omega_p2^2)(gamma_2/gamma_3). With ignore_ions the ionic
/// response is disregarded entirely and the value is exactly 1.
double zero_freq_metal_local(const ElectrolyteGap& gap, const Material& metal,
                             bool ignore_ions = false);

/// Full zero-frequency block of a slab surface (thickness-independent):
/// rss = 0, rpp = -1, no mixing, rll = -1 for metals or the screened
/// dielectric form otherwise.
ReflectionBlock zero_freq_slab_block(const ElectrolyteGap& gap,
                                     const Material& slab_material, double k);

}  // namespace casimir
