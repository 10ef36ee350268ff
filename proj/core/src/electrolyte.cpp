#include "casimir/electrolyte.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using namespace constants;

ElectrolyteGap::ElectrolyteGap(Material water, double lambda_D, double gamma_ions,
                               double ion_mass, double temperature_K)
    : water_(std::move(water)),
      lambda_D_(lambda_D),
      gamma_ions_(gamma_ions),
      ion_mass_(ion_mass),
      temperature_(temperature_K) {
    if (lambda_D_ <= 0.0) throw ConfigError("electrolyte: lambda_D must be > 0");
    if (gamma_ions_ < 0.0) throw ConfigError("electrolyte: gamma_ions must be >= 0");
    if (ion_mass_ <= 0.0) throw ConfigError("electrolyte: ion_mass must be > 0");
    if (temperature_ <= 0.0) throw ConfigError("electrolyte: temperature must be > 0");
    if (water_.is_metallic())
        throw ConfigError("electrolyte: the solvent material must be a dielectric");

    eps_b0_ = water_.eps_static();
    v_th_ = std::sqrt(k_B * temperature_ / ion_mass_);
    omega_p3_ = std::sqrt(eps_b0_) * v_th_ / lambda_D_;
}

double ElectrolyteGap::ion_drude_term(double xi) const {
    if (xi <= 0.0)
        throw std::domain_error("eps_transverse: ionic Drude term diverges at zero frequency");
    return omega_p3_ * omega_p3_ / (xi * (xi + gamma_ions_));
}

double ElectrolyteGap::eps_transverse(double xi) const {
    return eps_b(xi) + ion_drude_term(xi);
}

double ElectrolyteGap::eps_longitudinal(double xi, double K) const {
    return eps_longitudinal_k2(xi, K * K);
}

double ElectrolyteGap::eps_longitudinal_k2(double xi, double K_squared) const {
    if (xi == 0.0 && K_squared == 0.0)
        throw std::domain_error("eps_longitudinal: diverges at (xi, K) = (0, 0)");
    const double wp2 = omega_p3_ * omega_p3_;
    const double arg = xi * (xi + gamma_ions_) / wp2 +
                       lambda_D_ * lambda_D_ * K_squared / eps_b0_;
    return eps_b(xi) + 1.0 / arg;
}

double debye_length_from_concentration(double N, double eps_b0, double temperature_K) {
    if (N <= 0.0) throw std::domain_error("debye length: ion density must be > 0");
    return std::sqrt(eps0 * eps_b0 * k_B * temperature_K / (N * e_charge * e_charge));
}

double concentration_from_debye_length(double lambda_D, double eps_b0,
                                       double temperature_K) {
    if (lambda_D <= 0.0) throw std::domain_error("debye length must be > 0");
    return eps0 * eps_b0 * k_B * temperature_K / (lambda_D * lambda_D * e_charge * e_charge);
}

WaveKinematics kinematics(const ElectrolyteGap& gap, double eps1, double eps2,
                          double xi, double k) {
    if (xi < 0.0 || k < 0.0) throw std::domain_error("kinematics: xi and k must be >= 0");

    WaveKinematics kin;
    kin.xi = xi;
    kin.k = k;

    if (xi == 0.0) {
        // Transverse xi^2/c^2 terms vanish; the longitudinal constant is the
        // exact screened form.
        kin.kappa1 = kin.kappa2 = kin.kappa3 = k;
        kin.kappa_ell = std::hypot(k, 1.0 / gap.lambda_D());
        kin.K3 = kin.K2 = 0.0;
        kin.Kell = 1.0 / gap.lambda_D();
        return kin;
    }

    const double over_c = xi / c_light;
    const double eps3 = gap.eps_transverse(xi);
    kin.kappa1 = std::hypot(k, std::sqrt(eps1) * over_c);
    kin.kappa2 = std::hypot(k, std::sqrt(eps2) * over_c);
    kin.kappa3 = std::hypot(k, std::sqrt(eps3) * over_c);

    // kappa_ell^2 = k^2 + [xi (xi+gamma) + omega_p3^2/eps_b] / v_th^2; the
    // bracket is also Kell^2, computed directly to avoid cancellation.
    const double wp3 = gap.plasma_frequency();
    const double bracket = xi * (xi + gap.gamma_ions()) + wp3 * wp3 / gap.eps_b(xi);
    kin.Kell = std::sqrt(bracket) / gap.thermal_velocity();
    kin.kappa_ell = std::hypot(k, kin.Kell);

    kin.K3 = std::sqrt(eps3) * over_c;
    kin.K2 = std::sqrt(eps2) * over_c;
    return kin;
}

}  // namespace casimir
