#include <doctest.h>

#include "casimir/constants.hpp"
#include "casimir/matsubara.hpp"

using namespace casimir;

TEST_CASE("physical constants are positive and pinned") {
    CHECK(constants::hbar > 0.0);
    CHECK(constants::c_light > 0.0);
    CHECK(constants::k_B > 0.0);
    CHECK(constants::e_charge > 0.0);
    CHECK(constants::eps0 > 0.0);
    CHECK(constants::atomic_mass_unit > 0.0);
    CHECK(constants::c_light == 299792458.0);
    CHECK(constants::k_B == 1.380649e-23);
}

TEST_CASE("ev_to_angular") {
    CHECK(ev_to_angular(0.0) == 0.0);
    // 9 eV * 1.602176634e-19 C / 1.054571817e-34 J s
    CHECK(ev_to_angular(9.0) ==
          doctest::Approx(9.0 * 1.602176634e-19 / 1.054571817e-34).epsilon(1e-14));
    CHECK(ev_to_angular(9.0) == doctest::Approx(1.36734e16).epsilon(1e-5));
    CHECK(ev_to_angular(0.035) == doctest::Approx(5.3174e13).epsilon(1e-4));
    CHECK_THROWS_AS(ev_to_angular(-1.0), std::domain_error);
    CHECK_THROWS_AS(angular_to_ev(-1.0), std::domain_error);
}

TEST_CASE("ev <-> angular round trip at ulp scale") {
    for (double ev : {1e-9, 3.5e-2, 1.0, 9.0, 1.234e2, 1e4}) {
        const double back = angular_to_ev(ev_to_angular(ev));
        CHECK(back == doctest::Approx(ev).epsilon(4e-16));
    }
}

TEST_CASE("matsubara frequencies") {
    CHECK(matsubara(0, 300.0).xi == 0.0);
    CHECK(matsubara(0, 1.0).index == 0);
    // 2 pi kB 300 / hbar
    CHECK(matsubara(1, 300.0).xi == doctest::Approx(2.46779e14).epsilon(1e-5));
    CHECK_THROWS_AS(matsubara(-1, 300.0), std::domain_error);
    CHECK_THROWS_AS(matsubara(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(matsubara(1, -5.0), std::domain_error);
}

TEST_CASE("matsubara grid is exactly linear in n and in integer T multiples") {
    const double T = 297.15;
    const double base = matsubara(1, T).xi;
    for (int n : {2, 3, 7, 50, 1024}) {
        CHECK(matsubara(n, T).xi == static_cast<double>(n) * base);
    }
    CHECK(matsubara(5, 2.0 * T).xi == 2.0 * matsubara(5, T).xi);
    CHECK(matsubara(5, 4.0 * T).xi == 4.0 * matsubara(5, T).xi);
}
