#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/electrolyte.hpp"
#include "casimir/errors.hpp"
#include "casimir/matsubara.hpp"
#include "casimir/reflection.hpp"

#include "oracles.hpp"

using namespace casimir;

namespace {

const std::string kData = CASIMIR_DATA_DIR;

Material shipped(const std::string& name) {
    return load_material_file(kData + "/materials/" + name + ".json");
}

ElectrolyteGap make_gap(double lambda_D_nm = 100.0, double gamma_ions = 3e6) {
    return ElectrolyteGap(shipped("water"), lambda_D_nm * 1e-9, gamma_ions,
                          23.0 * constants::atomic_mass_unit, 300.0);
}

GapSample no_ion_sample(double eps_b, double eps_b0, double xi, double k) {
    GapSample gs;
    gs.k = k;
    gs.kappa3 = std::hypot(k, std::sqrt(eps_b) * xi / constants::c_light);
    gs.kappa_ell = 1.0;
    gs.K3 = std::sqrt(eps_b) * xi / constants::c_light;
    gs.Kell = 1.0;
    gs.eps_b = eps_b;
    gs.eps_b0 = eps_b0;
    gs.ion_term = 0.0;
    return gs;
}

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

TEST_CASE("no ions: every amplitude reduces to the local Fresnel counterpart") {
    const ElectrolyteGap gap = make_gap();
    const Material gold = shipped("gold_drude");
    const Material silica = shipped("silica");
    const double xi1 = matsubara(1, 300.0).xi;

    double worst = 0.0;
    for (double xi : {0.1 * xi1, xi1, 10.0 * xi1, 100.0 * xi1}) {
        const double eb = gap.eps_b(xi);
        for (const Material* other : {&gold, &silica}) {
            const double eo = other->eval(xi);
            for (double k : {1e5, 1e6, 1e7, 1e8, 1e9}) {
                const GapSample gs = no_ion_sample(eb, gap.eps_b0(), xi, k);
                const double ko = std::hypot(k, std::sqrt(eo) * xi / constants::c_light);
                const InterfaceAmplitudes a = interface_amplitudes(
                    {eo, ko, std::sqrt(eo) * xi / constants::c_light}, gs);
                const auto [rs, rp] = fresnel_local(eo, ko, eb, gs.kappa3);
                worst = std::max(worst, rel(a.r_pp, rp));
                worst = std::max(worst, rel(a.r_ss, rs));
                CHECK(a.r_lp == 0.0);
                CHECK(a.r_pl == 0.0);
                CHECK(a.t_lp_prime == 0.0);
                for (double d : {20e-9, 50e-9, 100e-9}) {
                    const ReflectionBlock slab = compose_slab(a, ko, d);
                    worst = std::max(worst, rel(slab.rpp, local_slab_reflection(rp, ko, d)));
                    worst = std::max(worst, rel(slab.rss, local_slab_reflection(rs, ko, d)));
                }
            }
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("no interface: matching media give zero reflection, unit transmission") {
    const ElectrolyteGap gap = make_gap();
    const double xi1 = matsubara(1, 300.0).xi;
    const double eb = gap.eps_b(xi1);
    const GapSample gs = no_ion_sample(eb, gap.eps_b0(), xi1, 1e7);
    const InterfaceAmplitudes a = interface_amplitudes({eb, gs.kappa3, gs.K3}, gs);
    CHECK(a.r_pp == 0.0);
    CHECK(a.r_ss == 0.0);
    CHECK(a.r_lp == 0.0);
    CHECK(a.t_pp == 1.0);
}

TEST_CASE("local slab composition matches direct field matching") {
    const ElectrolyteGap gap = make_gap();
    const Material gold = shipped("gold_drude");
    const Material silica = shipped("silica");
    const double xi1 = matsubara(1, 300.0).xi;

    for (double xi : {xi1, 7.0 * xi1, 60.0 * xi1}) {
        const double eb = gap.eps_b(xi);
        for (const Material* m : {&gold, &silica}) {
            const double eo = m->eval(xi);
            for (double k : {1e6, 1e7, 2e8}) {
                const double k3 = std::hypot(k, std::sqrt(eb) * xi / constants::c_light);
                const double ko = std::hypot(k, std::sqrt(eo) * xi / constants::c_light);
                const auto [rs, rp] = fresnel_local(eo, ko, eb, k3);
                for (double d : {5e-9, 50e-9, 200e-9}) {
                    CHECK(local_slab_reflection(rp, ko, d) ==
                          doctest::Approx(oracles::tm_slab(eo, ko, eb, k3, d))
                              .epsilon(1e-10));
                    CHECK(local_slab_reflection(rs, ko, d) ==
                          doctest::Approx(oracles::te_slab(ko, k3, d)).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("opaque slab equals the single interface") {
    const ElectrolyteGap gap = make_gap();
    const Material gold = shipped("gold_drude");
    const double xi1 = matsubara(1, 300.0).xi;
    const double e2 = gold.eval(xi1);
    const WaveKinematics kin = kinematics(gap, 3.0, e2, xi1, 1e7);
    const GapSample gs = gap_sample(gap, kin);
    const InterfaceAmplitudes a = interface_amplitudes({e2, kin.kappa2, kin.K2}, gs);
    const ReflectionBlock b = compose_slab(a, kin.kappa2, 1.0 /* meter */);
    CHECK(b.rpp == a.r_pp);
    CHECK(b.rll == a.r_ll);
    CHECK(b.rlp == a.r_lp);
    CHECK(b.rss == a.r_ss);
}

TEST_CASE("cross-surface mixing products vanish toward zero frequency") {
    const Material gold = shipped("gold_drude");
    const Material silica = shipped("silica");
    const double xi1 = matsubara(1, 300.0).xi;

    auto worst_product = [&](const ElectrolyteGap& gap, double xi) {
        const double e1 = silica.eval(xi);
        const double e2 = gold.eval(xi);
        double worst = 0.0;
        for (double k : {1e5, 1e6, 1e7, 1e8, 1e9}) {
            const WaveKinematics kin = kinematics(gap, e1, e2, xi, k);
            const GapSample gs = gap_sample(gap, kin);
            const double K1 = std::sqrt(e1) * xi / constants::c_light;
            const InterfaceAmplitudes a1 = interface_amplitudes({e1, kin.kappa1, K1}, gs);
            const InterfaceAmplitudes a2 =
                interface_amplitudes({e2, kin.kappa2, kin.K2}, gs);
            worst = std::max(worst, std::abs(a1.r_pl * a2.r_lp));
            worst = std::max(worst, std::abs(a2.r_pl * a1.r_lp));
        }
        return worst;
    };

    // strong screening: already small at xi = 1e-6 xi_1
    const ElectrolyteGap strong = make_gap(10.0);
    CHECK(worst_product(strong, 1e-6 * xi1) < 1e-3);

    // shipped defaults: the ohmic decay sets in below gamma_ions; the
    // descending sequence is strictly decreasing and runs out to zero
    const ElectrolyteGap gap = make_gap();
    double prev = 1e300;
    for (double scale : {1e-6, 1e-8, 1e-10, 1e-12}) {
        const double worst = worst_product(gap, scale * xi1);
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev < 1e-8);
}

TEST_CASE("local Fresnel conventions") {
    // identical media
    const auto [rs0, rp0] = fresnel_local(2.0, 1e7, 2.0, 1e7);
    CHECK(rs0 == 0.0);
    CHECK(rp0 == 0.0);

    // conducting gap at vanishing frequency drives r_pp to -1 on the
    // dielectric side, while r_ss vanishes with the kappa contrast
    const ElectrolyteGap gap = make_gap();
    const Material silica = shipped("silica");
    const double xi = 1e-12 * matsubara(1, 300.0).xi;
    const double e3 = gap.eps_transverse(xi);
    for (double k : {1e5, 1e7, 1e9}) {
        const auto [rs, rp] = fresnel_local(silica.eval(xi), k, e3, k);
        CHECK(std::abs(rp + 1.0) < 1e-9);
        CHECK(rs == 0.0);
    }
}

TEST_CASE("zero-frequency closed forms, dielectric side") {
    const ElectrolyteGap gap = make_gap();
    const double eps1_0 = shipped("silica").eps_static();
    const double eb0 = gap.eps_b0();
    const double lam = gap.lambda_D();

    auto [rpp_at0, rll_at0] = zero_freq_silica(eps1_0, eb0, lam, 0.0);
    CHECK(rpp_at0 == -1.0);
    CHECK(rll_at0 == 1.0);

    const double s_inf = eps1_0 / eb0;
    auto [rpp_huge, rll_huge] = zero_freq_silica(eps1_0, eb0, lam, 1e15);
    CHECK(rll_huge == doctest::Approx((1.0 - s_inf) / (1.0 + s_inf)).epsilon(1e-10));

    double prev = 1.0 + 1e-15;
    for (double k : {1e4, 1e6, 1e7, 1e8, 1e10}) {
        const double rll = zero_freq_silica(eps1_0, eb0, lam, k).second;
        CHECK(rll > 0.0);
        CHECK(rll < prev);
        prev = rll;
    }
}

TEST_CASE("zero-frequency closed forms, metallic slab side") {
    const ElectrolyteGap gap = make_gap();
    const Material gold = shipped("gold_drude");

    auto [rpp, rll] = zero_freq_metal(gap, gold);
    CHECK(rpp == -1.0);
    CHECK(rll == -1.0);

    // dissipationless plasma metal: same limits
    const Material plasma =
        material_from_json(R"({"name":"gold_plasma","drude":{"omega_p_ev":9.0,"gamma_ev":0.0}})");
    auto [rpp_p, rll_p] = zero_freq_metal(gap, plasma);
    CHECK(rpp_p == -1.0);
    CHECK(rll_p == -1.0);

    CHECK_THROWS_AS(zero_freq_metal(gap, shipped("silica")), std::domain_error);

    const ReflectionBlock b = zero_freq_slab_block(gap, gold, 1e7);
    CHECK(b.rpp == -1.0);
    CHECK(b.rll == -1.0);
    CHECK(b.rss == 0.0);
    CHECK(b.rpl == 0.0);
}

TEST_CASE("numeric limit of the slab block approaches the closed forms") {
    const ElectrolyteGap gap = make_gap();
    const Material gold = shipped("gold_drude");
    const double xi = 1e-8 * matsubara(1, 300.0).xi;
    const double e2 = gold.eval(xi);

    for (double k : {1e5, 1e7, 1e9}) {
        const WaveKinematics kin = kinematics(gap, 3.8, e2, xi, k);
        const GapSample gs = gap_sample(gap, kin);
        const InterfaceAmplitudes a = interface_amplitudes({e2, kin.kappa2, kin.K2}, gs);
        for (double d : {20e-9, 50e-9, 100e-9}) {
            const ReflectionBlock b = compose_slab(a, kin.kappa2, d);
            CHECK(std::abs(b.rpp + 1.0) < 1e-3);
            CHECK(std::abs(b.rll + 1.0) < 1e-3);
        }
    }
}

TEST_CASE("local zero-frequency TM value at the metal interface") {
    const Material gold = shipped("gold_drude");

    const ElectrolyteGap gap = make_gap();
    const double v = zero_freq_metal_local(gap, gold);
    CHECK(v > 0.999);
    CHECK(v < 1.0);

    // disregarding the ions entirely gives exactly 1
    CHECK(zero_freq_metal_local(gap, gold, /*ignore_ions=*/true) == 1.0);

    // plasma-model ions flip even the local limit
    CHECK(zero_freq_metal_local(make_gap(100.0, 0.0), gold) == -1.0);

    // sign contrast with the nonlocal closed form
    CHECK(zero_freq_metal(gap, gold).first == -1.0);
    CHECK_THROWS_AS(zero_freq_metal_local(gap, shipped("water")), std::domain_error);
}

TEST_CASE("amplitude magnitudes bounded by one for passive media") {
    const ElectrolyteGap gap = make_gap();
    const Material gold = shipped("gold_drude");
    const Material silica = shipped("silica");
    const double xi1 = matsubara(1, 300.0).xi;

    for (double xi : {1e-8 * xi1, 1e-3 * xi1, xi1, 10.0 * xi1}) {
        const double e1 = silica.eval(xi);
        const double e2 = gold.eval(xi);
        for (double k : {1e5, 1e6, 1e7, 1e8, 1e9}) {
            const WaveKinematics kin = kinematics(gap, e1, e2, xi, k);
            const GapSample gs = gap_sample(gap, kin);
            const InterfaceAmplitudes a1 = interface_amplitudes(
                {e1, kin.kappa1, std::sqrt(e1) * xi / constants::c_light}, gs);
            const InterfaceAmplitudes a2 =
                interface_amplitudes({e2, kin.kappa2, kin.K2}, gs);
            for (const auto& a : {a1, a2}) {
                CHECK(std::abs(a.r_ss) <= 1.0 + 1e-12);
                CHECK(std::abs(a.r_pp) <= 1.0 + 1e-12);
                CHECK(std::abs(a.r_ll) <= 1.0 + 1e-12);
            }
            const ReflectionBlock slab = compose_slab(a2, kin.kappa2, 50e-9);
            CHECK(std::abs(slab.rss) <= 1.0 + 1e-12);
            CHECK(std::abs(slab.rpp) <= 1.0 + 1e-12);
            CHECK(std::abs(slab.rll) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("slab composition rejects nonpositive thickness") {
    const ElectrolyteGap gap = make_gap();
    const double xi1 = matsubara(1, 300.0).xi;
    const WaveKinematics kin = kinematics(gap, 3.0, 100.0, xi1, 1e7);
    const GapSample gs = gap_sample(gap, kin);
    const InterfaceAmplitudes a = interface_amplitudes({100.0, kin.kappa2, kin.K2}, gs);
    CHECK_THROWS_AS(compose_slab(a, kin.kappa2, 0.0), std::domain_error);
    CHECK_THROWS_AS(compose_slab(a, kin.kappa2, -1e-9), std::domain_error);
}
