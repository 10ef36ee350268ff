#include "casimir/engine.hpp"

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/matsubara.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

using namespace constants;

namespace {

constexpr double kEFolds = 40.0;  // integration window beyond the first e-fold

double prefactor(double L, double T) { return k_B * T / (16.0 * pi * L * L); }

}  // namespace

LayerStack::LayerStack(Material half_space_, ElectrolyteGap gap_, double separation_L,
                       Material slab_, double thickness_d)
    : half_space(std::move(half_space_)),
      gap(std::move(gap_)),
      separation(separation_L),
      slab(std::move(slab_)),
      thickness(thickness_d) {
    if (separation <= 0.0) throw ConfigError("stack: separation L must be > 0");
    if (thickness <= 0.0) throw ConfigError("stack: slab thickness d must be > 0");
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
        throw ConfigError("quadrature: rel_tol must be in (0, 1e-3]");
    if (abs_tol < 0.0) throw ConfigError("quadrature: abs_tol must be >= 0");
    if (max_subdivisions < 16)
        throw ConfigError("quadrature: max_subdivisions must be >= 16");
    if (!(matsubara_tail_tol > 0.0))
        throw ConfigError("quadrature: matsubara_tail_tol must be > 0");
}

namespace detail {

double scaled_exponent_integral(double L, double temperature_K, double q0,
                                const std::function<double(double, double)>& G,
                                const QuadratureSpec& spec, int matsubara_n) {
    const double u0 = 2.0 * L * q0;
    const double pref = prefactor(L, temperature_K);
    auto f = [&](double u) {
        const double q = u / (2.0 * L);
        const double k = std::sqrt(std::max(q * q - q0 * q0, 0.0));
        return u * G(k, u);
    };
    const auto r = quad::integrate(f, u0, u0 + kEFolds, spec.rel_tol,
                                   spec.abs_tol / pref, spec.max_subdivisions);
    if (!r.converged)
        throw ConvergenceError(
            "k-integral did not converge (worst panel u in [" +
                std::to_string(r.worst_a) + ", " + std::to_string(r.worst_b) + "], n=" +
                std::to_string(matsubara_n) + ")",
            pref * r.value, pref * r.error, matsubara_n);
    return pref * r.value;
}

double zero_long_integral(double L, double temperature_K, double lambda_D,
                          const std::function<double(double)>& r1_ll,
                          const QuadratureSpec& spec) {
    const double q0 = 1.0 / lambda_D;
    auto G = [&](double k, double u) { return std::log1p(r1_ll(k) * exp_guard(u)); };
    return scaled_exponent_integral(L, temperature_K, q0, G, spec, 0);
}

double ideal_mirror_energy(double xi, double L, double eps3, double temperature_K,
                           const QuadratureSpec& spec) {
    const double q0 = std::sqrt(eps3) * xi / c_light;
    auto G = [&](double, double u) { return 2.0 * std::log1p(-exp_guard(u)); };
    return scaled_exponent_integral(L, temperature_K, q0, G, spec, -1);
}

double log_det_round_trip(const ReflectionBlock& R1, const ReflectionBlock& R2,
                          double t_p, double t_ell) {
    const double pp = t_p * t_p;
    const double pl = t_p * t_ell;
    const double ll = t_ell * t_ell;

    const double Mss = R1.rss * R2.rss * pp;
    const double Mpp = R1.rpp * R2.rpp * pp + R1.rpl * R2.rlp * pl;
    const double Mpl = R1.rpp * R2.rpl * pl + R1.rpl * R2.rll * ll;
    const double Mlp = R1.rlp * R2.rpp * pp + R1.rll * R2.rlp * pl;
    const double Mll = R1.rlp * R2.rpl * pl + R1.rll * R2.rll * ll;

    return std::log1p(-Mss) + std::log1p(-(Mpp + Mll) + Mpp * Mll - Mpl * Mlp);
}

}  // namespace detail

double free_energy_n(const LayerStack& stack, const QuadratureSpec& spec, int n,
                     IntegrationVariable var) {
    if (n < 1) throw std::domain_error("free_energy_n: n must be >= 1");
    spec.validate();

    const double T = stack.temperature();
    const double xi = matsubara(n, T).xi;
    const double L = stack.separation;
    const double d = stack.thickness;

    // Materials are k-independent: evaluate once per Matsubara order. The gap
    // uses pure water (the ionic Drude term is negligible for every n >= 1).
    const double e1 = stack.half_space.eval(xi);
    const double eb = stack.gap.eps_b(xi);
    const double e2 = stack.slab.eval(xi);

    const double a1 = std::sqrt(e1) * xi / c_light;
    const double a2 = std::sqrt(e2) * xi / c_light;
    const double a3 = std::sqrt(eb) * xi / c_light;

    auto log_term = [&](double k, double kappa3, double E) {
        const double kappa1 = std::hypot(k, a1);
        const double kappa2 = std::hypot(k, a2);
        const auto [rs1, rp1] = fresnel_local(e1, kappa1, eb, kappa3);
        const auto [rs2s, rp2s] = fresnel_local(e2, kappa2, eb, kappa3);
        const double rs2 = local_slab_reflection(rs2s, kappa2, d);
        const double rp2 = local_slab_reflection(rp2s, kappa2, d);
        return std::log1p(-rs1 * rs2 * E) + std::log1p(-rp1 * rp2 * E);
    };

    if (var == IntegrationVariable::TransverseK) {
        const double u_max = 2.0 * L * a3 + kEFolds;
        const double k_max = std::sqrt(std::max(
            (u_max / (2.0 * L)) * (u_max / (2.0 * L)) - a3 * a3, 0.0));
        const double pref = k_B * T / (4.0 * pi);
        auto f = [&](double k) {
            const double kappa3 = std::hypot(k, a3);
            return k * log_term(k, kappa3, exp_guard(2.0 * kappa3 * L));
        };
        const auto r = quad::integrate(f, 0.0, k_max, spec.rel_tol,
                                       spec.abs_tol / pref, spec.max_subdivisions);
        if (!r.converged)
            throw ConvergenceError("k-integral (raw variable) did not converge",
                                   pref * r.value, pref * r.error, n);
        return pref * r.value;
    }

    auto G = [&](double k, double u) {
        return log_term(k, u / (2.0 * L), exp_guard(u));
    };
    return detail::scaled_exponent_integral(L, T, a3, G, spec, n);
}

double free_energy_zero_tm(const LayerStack& stack) {
    if (!stack.slab.is_metallic())
        throw std::domain_error(
            "free_energy_zero_tm: the universal closed form requires a metallic slab");
    const double L = stack.separation;
    return -k_B * stack.temperature() * zeta3 / (16.0 * pi * L * L);
}

double zero_tm_by_quadrature(double L, double temperature_K, const QuadratureSpec& spec) {
    auto G = [](double, double u) { return std::log1p(-exp_guard(u)); };
    return detail::scaled_exponent_integral(L, temperature_K, 0.0, G, spec, 0);
}

double free_energy_zero_long(const LayerStack& stack, const QuadratureSpec& spec) {
    spec.validate();
    const double eps1_0 = stack.half_space.eps_static();
    const double eps_b0 = stack.gap.eps_b0();
    const double lam = stack.gap.lambda_D();
    // r2_ll(0) = -1 exactly; folded into the sign of the integrand.
    auto r1 = [&](double k) {
        return zero_freq_silica(eps1_0, eps_b0, lam, k).second;
    };
    return detail::zero_long_integral(stack.separation, stack.temperature(), lam, r1,
                                      spec);
}

EnergyBreakdown total_free_energy(const LayerStack& stack, const QuadratureSpec& spec) {
    spec.validate();
    const double T = stack.temperature();
    const double L = stack.separation;
    const double xi1 = matsubara(1, T).xi;

    EnergyBreakdown out;
    out.f0_tm = free_energy_zero_tm(stack);
    out.f0_long = free_energy_zero_long(stack, spec);

    // Terms decay like exp(-2 xi_n sqrt(eps3) L / c); 20 e-folds caps the sum,
    // the relative tail test usually stops it earlier.
    const int n_cap = std::max(
        2, static_cast<int>(std::ceil(20.0 * c_light / (2.0 * L * xi1))));

    double doubled_sum = 0.0;
    double prev = 0.0;
    int n = 0;
    while (n < n_cap) {
        ++n;
        const double fn = free_energy_n(stack, spec, n);
        out.f_n.emplace_back(n, fn);
        doubled_sum += 2.0 * fn;
        if (fn == 0.0) break;
        if (n >= 2 && std::abs(fn) < std::abs(prev)) {
            const double q = std::min(std::abs(fn) / std::abs(prev), 0.999);
            const double tail = std::abs(fn) * q / (1.0 - q);
            const double scale = std::abs(out.f0_tm + out.f0_long + doubled_sum);
            if (tail < spec.matsubara_tail_tol * scale) break;
        }
        prev = fn;
    }

    out.n_max_used = n;
    out.total = out.f0_tm + out.f0_long + doubled_sum;
    out.hamaker_over_kBT = hamaker_from_energy(out.total, L, T);
    return out;
}

double free_energy_zero_tm_local_water(const LayerStack& stack,
                                       const QuadratureSpec& spec) {
    spec.validate();
    const double r2 = zero_freq_metal_local(stack.gap, stack.slab);
    // product r1 r2 = (-1) r2; integrand log1p(+r2 e^{-u}).
    auto G = [r2](double, double u) { return std::log1p(r2 * exp_guard(u)); };
    return detail::scaled_exponent_integral(stack.separation, stack.temperature(), 0.0,
                                            G, spec, 0);
}

EnergyBreakdown total_free_energy_local_water(const LayerStack& stack,
                                              const QuadratureSpec& spec) {
    EnergyBreakdown out = total_free_energy(stack, spec);
    const double f0_nonlocal = out.f0_tm + out.f0_long;
    out.f0_tm = free_energy_zero_tm_local_water(stack, spec);
    out.f0_long = 0.0;
    out.total += out.f0_tm - f0_nonlocal;
    out.hamaker_over_kBT =
        hamaker_from_energy(out.total, stack.separation, stack.temperature());
    return out;
}

double hamaker_from_energy(double free_energy_per_area, double L, double temperature_K) {
    return -12.0 * pi * L * L * free_energy_per_area / (k_B * temperature_K);
}

double hamaker_from_breakdown(const EnergyBreakdown& b, double L, double temperature_K,
                              EnergySelector selector) {
    double F = b.total;
    switch (selector) {
        case EnergySelector::Total: break;
        case EnergySelector::TotalMinusF0Tm: F = b.total - b.f0_tm; break;
        case EnergySelector::ZeroFrequencyOnly: F = b.f0_tm + b.f0_long; break;
    }
    return hamaker_from_energy(F, L, temperature_K);
}

double hamaker(const LayerStack& stack, const QuadratureSpec& spec,
               EnergySelector selector) {
    const EnergyBreakdown b = total_free_energy(stack, spec);
    return hamaker_from_breakdown(b, stack.separation, stack.temperature(), selector);
}

double logdet_free_energy_at_xi(const LayerStack& stack, const QuadratureSpec& spec,
                                double xi) {
    if (xi <= 0.0)
        throw std::domain_error("logdet_free_energy_at_xi: xi must be > 0 "
                                "(zero frequency is reached as a descending sequence)");
    spec.validate();

    const double T = stack.temperature();
    const double L = stack.separation;
    const double d = stack.thickness;
    const ElectrolyteGap& gap = stack.gap;

    const double e1 = stack.half_space.eval(xi);
    const double e2 = stack.slab.eval(xi);
    const double eps3 = gap.eps_transverse(xi);
    const double q0 = std::sqrt(eps3) * xi / c_light;
    const double K1 = std::sqrt(e1) * xi / c_light;

    auto G = [&](double k, double u) {
        const WaveKinematics kin = kinematics(gap, e1, e2, xi, k);
        const GapSample gs = gap_sample(gap, kin);
        const ReflectionBlock R1 =
            half_space_block(interface_amplitudes({e1, kin.kappa1, K1}, gs));
        const ReflectionBlock R2 =
            compose_slab(interface_amplitudes({e2, kin.kappa2, kin.K2}, gs),
                         kin.kappa2, d);
        const double t_p = std::exp(-0.5 * u);  // e^{-kappa3 L}
        const double t_ell = exp_guard(kin.kappa_ell * L);
        return detail::log_det_round_trip(R1, R2, t_p, t_ell);
    };
    return detail::scaled_exponent_integral(L, T, q0, G, spec, -1);
}

double logdet_roundtrip(const LayerStack& stack, const QuadratureSpec& spec, int n) {
    if (n < 1)
        throw std::domain_error("logdet_roundtrip: n must be >= 1; use "
                                "logdet_free_energy_at_xi for the xi -> 0 sequence");
    return logdet_free_energy_at_xi(stack, spec, matsubara(n, stack.temperature()).xi);
}

}  // namespace casimir
