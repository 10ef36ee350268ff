#include "casimir/reflection.hpp"

#include <stdexcept>

#include "casimir/errors.hpp"

namespace casimir {

GapSample gap_sample(const ElectrolyteGap& gap, const WaveKinematics& kin) {
    GapSample s;
    s.k = kin.k;
    s.kappa3 = kin.kappa3;
    s.kappa_ell = kin.kappa_ell;
    s.K3 = kin.K3;
    s.Kell = kin.Kell;
    s.eps_b = gap.eps_b(kin.xi);
    s.eps_b0 = gap.eps_b0();
    s.ion_term = gap.ion_drude_term(kin.xi);
    return s;
}

InterfaceAmplitudes interface_amplitudes(const MediumSample& other, const GapSample& gap) {
    InterfaceAmplitudes a;
    const double k = gap.k;
    const double k3 = gap.kappa3;
    const double ko = other.kappa;
    const double e3 = gap.eps3();
    const double eo = other.eps;

    a.r_ss = (k3 - ko) / (k3 + ko);
    a.r_ss_prime = -a.r_ss;

    if (gap.ion_term == 0.0) {
        // No ions: the longitudinal channel does not exist; everything local.
        const double D = eo * k3 + e3 * ko;
        a.r_pp = (eo * k3 - e3 * ko) / D;
        a.r_pp_prime = -a.r_pp;
        a.t_pp = 2.0 * k3 * e3 / D * (other.K / gap.K3);
        a.t_pp_prime = 2.0 * ko * e3 / D * (other.K / gap.K3);
        return a;
    }

    const double k2_over_kl = k * k / gap.kappa_ell;

    // Incidence from the gap. The continuation flips the sign of the
    // (k^2/kappa_ell) terms relative to the real-frequency expressions.
    const double Xf = k2_over_kl * (eo / gap.eps_b) * gap.ion_term;
    const double D = eo * k3 + e3 * ko + Xf;
    if (D == 0.0) throw NumericError("interface_amplitudes: vanishing denominator");

    a.r_pp = (eo * k3 - e3 * ko - Xf) / D;
    a.r_ll = (eo * k3 + e3 * ko - Xf) / D;
    a.r_lp = 2.0 * k3 * (k / gap.kappa_ell) * (eo / gap.eps_b) * gap.ion_term / D *
             (gap.Kell / gap.K3);
    a.r_pl = -2.0 * k * eo / D * (gap.K3 / gap.Kell);
    a.t_pp = 2.0 * k3 * e3 / D * (other.K / gap.K3);
    a.t_pl = -2.0 * k * e3 / D * (other.K / gap.Kell);

    // Incidence from inside the local medium.
    const double Xb = k2_over_kl * (e3 / gap.eps_b) * (eo - gap.eps_b);
    const double Db = eo * k3 + e3 * ko + Xb;
    if (Db == 0.0) throw NumericError("interface_amplitudes: vanishing denominator");

    // The primed amplitudes (incidence from inside the local medium) carry the
    // incident medium's z-component in the transmissions and the reversed-role
    // sign in the reflection; together these close the Stokes relation
    // t t' = 1 - r^2 and the r' = -r limit that the multiple-reflection series
    // needs to reduce to the textbook slab coefficient when the ions are
    // switched off.
    a.r_pp_prime = (e3 * ko - eo * k3 + Xb) / Db;
    a.t_lp_prime = -2.0 * ko * (k / gap.kappa_ell) * (e3 / gap.eps_b) *
                   (eo - gap.eps_b) / Db * (gap.Kell / gap.K3);
    a.t_pp_prime = 2.0 * ko * e3 / Db * (other.K / gap.K3);
    return a;
}

ReflectionBlock half_space_block(const InterfaceAmplitudes& a) {
    return {a.r_ss, a.r_pp, a.r_pl, a.r_lp, a.r_ll};
}

ReflectionBlock compose_slab(const InterfaceAmplitudes& a, double kappa2, double d) {
    if (d <= 0.0) throw std::domain_error("compose_slab: thickness must be > 0");
    const double E = exp_guard(2.0 * kappa2 * d);

    ReflectionBlock b;
    b.rss = a.r_ss;
    b.rpp = a.r_pp;
    b.rpl = a.r_pl;
    b.rlp = a.r_lp;
    b.rll = a.r_ll;
    if (E == 0.0) return b;  // opaque slab: half-space amplitudes

    const double denom_p = 1.0 - a.r_pp_prime * a.r_pp_prime * E;
    const double denom_s = 1.0 - a.r_ss_prime * a.r_ss_prime * E;
    if (denom_p <= 0.0 || denom_s <= 0.0)
        throw NumericError("compose_slab: multiple-reflection series diverges");

    const double round_p = a.r_pp_prime * E / denom_p;
    b.rpp += a.t_pp * a.t_pp_prime * round_p;
    b.rlp += a.t_pp * a.t_lp_prime * round_p;
    b.rpl += a.t_pl * a.t_pp_prime * round_p;
    b.rll += a.t_pl * a.t_lp_prime * round_p;

    // s channel: same composition with p -> s; t_ss t'_ss = 1 - r_ss^2.
    b.rss += (1.0 - a.r_ss * a.r_ss) * a.r_ss_prime * E / denom_s;
    return b;
}

std::pair<double, double> fresnel_local(double eps_other, double kappa_other,
                                        double eps_gap, double kappa_gap) {
    const double r_ss = (kappa_gap - kappa_other) / (kappa_gap + kappa_other);
    const double r_pp = (eps_other * kappa_gap - eps_gap * kappa_other) /
                        (eps_other * kappa_gap + eps_gap * kappa_other);
    return {r_ss, r_pp};
}

double local_slab_reflection(double r_single, double kappa2, double d) {
    const double E = exp_guard(2.0 * kappa2 * d);
    return r_single * (1.0 - E) / (1.0 - r_single * r_single * E);
}

std::pair<double, double> zero_freq_silica(double eps1_static, double eps_b0,
                                           double lambda_D, double k) {
    if (k < 0.0) throw std::domain_error("zero_freq_silica: k must be >= 0");
    const double kappa_ell0 = std::hypot(k, 1.0 / lambda_D);
    const double s = (k / kappa_ell0) * (eps1_static / eps_b0);
    return {-1.0, (1.0 - s) / (1.0 + s)};
}

std::pair<double, double> zero_freq_metal(const ElectrolyteGap& /*gap*/,
                                          const Material& metal) {
    if (!metal.is_metallic())
        throw std::domain_error("zero_freq_metal: material '" + metal.name() +
                                "' is not metallic (no Drude term)");
    // Both eps2 and eps3 diverge as 1/xi; the nonlocal eps2*eps3 ~ 1/xi^2
    // terms dominate and fix the limits exactly, for any k, d and gamma_2.
    return {-1.0, -1.0};
}

double zero_freq_metal_local(const ElectrolyteGap& gap, const Material& metal,
                             bool ignore_ions) {
    if (!metal.is_metallic())
        throw std::domain_error("zero_freq_metal_local: material '" + metal.name() +
                                "' is not metallic (no Drude term)");
    if (ignore_ions) return 1.0;
    if (gap.gamma_ions() == 0.0) return -1.0;  // plasma-model ions dominate the limit

    const DrudeTerm& d = *metal.drude();
    const double wp3 = gap.plasma_frequency();
    const double x = (wp3 * wp3) / (d.omega_p * d.omega_p) * (d.gamma / gap.gamma_ions());
    return (1.0 - x) / (1.0 + x);
}

ReflectionBlock zero_freq_slab_block(const ElectrolyteGap& gap,
                                     const Material& slab_material, double k) {
    ReflectionBlock b;
    b.rpp = -1.0;
    if (slab_material.is_metallic()) {
        b.rll = -1.0;
    } else {
        b.rll = zero_freq_silica(slab_material.eps_static(), gap.eps_b0(),
                                 gap.lambda_D(), k).second;
    }
    return b;
}

}  // namespace casimir
