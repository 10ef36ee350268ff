#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/material.hpp"
#include "casimir/matsubara.hpp"

#include "oracles.hpp"

using namespace casimir;

namespace {

const std::string kData = CASIMIR_DATA_DIR;

Material shipped(const std::string& name) {
    return load_material_file(kData + "/materials/" + name + ".json");
}

std::vector<double> xi_log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

}  // namespace

TEST_CASE("drude-only dissipationless model at xi = omega_p gives eps = 2") {
    OscillatorModel m;
    m.drude = DrudeTerm{1.3e16, 0.0};
    CHECK(eval_oscillator(m, 1.3e16) == 2.0);
}

TEST_CASE("gold Drude permittivity at the first Matsubara frequency") {
    const Material gold = shipped("gold_drude");
    const double xi1 = matsubara(1, 300.0).xi;
    // 1 + omega_p^2/(xi1 (xi1 + gamma)) with omega_p = 9 eV, gamma = 35 meV
    const double wp = ev_to_angular(9.0);
    const double g = ev_to_angular(0.035);
    const double expected = 1.0 + wp * wp / (xi1 * (xi1 + g));
    CHECK(gold.eval(xi1) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(gold.eval(xi1) == doctest::Approx(2526.8).epsilon(1e-4));
    CHECK(gold.is_metallic());
    CHECK_THROWS_AS(gold.eval(0.0), std::domain_error);
    CHECK_THROWS_AS(gold.eps_static(), std::domain_error);
}

TEST_CASE("high-frequency limit approaches eps_inf") {
    const Material silica = shipped("silica");
    CHECK(silica.eval(1e22) == doctest::Approx(1.0).epsilon(1e-10));
    const Material gold = shipped("gold_drude");
    CHECK(gold.eval(1e22) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("static permittivities of the shipped dielectrics") {
    const Material water = shipped("water");
    const Material silica = shipped("silica");
    const Material vacuum = shipped("vacuum");
    CHECK(vacuum.eps_static() == 1.0);
    CHECK(vacuum.eval(3.7e13) == 1.0);
    const double eb0 = water.eps_static();
    CHECK(eb0 > 60.0);
    CHECK(eb0 < 90.0);
    CHECK(silica.eps_static() == doctest::Approx(3.801).epsilon(1e-6));
    CHECK(silica.eps_static() < eb0);
}

TEST_CASE("monotone non-increasing permittivity over the imaginary axis") {
    for (const char* name : {"water", "silica", "gold_drude", "gold_tabulated"}) {
        const Material m = shipped(name);
        double prev = m.eval(1e11);
        for (double xi : xi_log_grid(1.2e11, 1e18, 40)) {
            const double cur = m.eval(xi);
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("dielectric ordering: silica below water below gold at low frequency") {
    const Material water = shipped("water");
    const Material silica = shipped("silica");
    const Material gold = shipped("gold_drude");
    for (double xi : xi_log_grid(1e11, 1e13, 30)) {
        const double e1 = silica.eval(xi);
        const double e3 = water.eval(xi);  // ionic term only raises it
        CHECK(e1 < e3);
        CHECK(e3 < gold.eval(xi));
    }
    // ordering of silica and water reverses at the first Matsubara frequency
    const double xi1 = matsubara(1, 300.0).xi;
    CHECK(silica.eval(xi1) > water.eval(xi1));
}

TEST_CASE("tabulated data with zero loss gives vacuum response") {
    TabulatedLossData data;
    for (double w_ev : {0.1, 1.0, 10.0, 100.0})
        data.rows.push_back({ev_to_angular(w_ev), 0.0});
    const Material m("zero_loss", std::move(data));
    CHECK(m.eval(1e14) == 1.0);
    CHECK(m.eval(1e16) == 1.0);
    CHECK(m.eps_static() == 1.0);
}

TEST_CASE("tabulated synthetic Lorentz matches the closed form on the imaginary axis") {
    const double C = 1.5;
    const double w0 = ev_to_angular(5.0);
    const double g = ev_to_angular(0.3);

    TabulatedLossData data;
    const int N = 4000;  // dense enough to resolve the resonance width g/w0
    for (int i = 0; i < N; ++i) {
        const double w = ev_to_angular(0.01) *
                         std::pow(ev_to_angular(400.0) / ev_to_angular(0.01),
                                  double(i) / (N - 1));
        const double num = C * w0 * w0 * g * w;
        const double den = (w0 * w0 - w * w) * (w0 * w0 - w * w) + g * g * w * w;
        data.rows.push_back({w, num / den});
    }
    const Material tab("synthetic", std::move(data));

    OscillatorModel model;
    model.oscillators.push_back({C, w0, g});

    for (double xi : {3e13, 1e14, 1e15, 5e15, 2e16}) {
        const double closed = eval_oscillator(model, xi);
        CHECK(tab.eval(xi) == doctest::Approx(closed).epsilon(5e-3));
    }
}

TEST_CASE("Drude low-frequency extension matches brute-force quadrature") {
    const double wp = ev_to_angular(9.0);
    const double g = ev_to_angular(0.035);
    const double W = ev_to_angular(1.0);

    TabulatedLossData data;
    for (double w_ev : {1.0, 2.0, 5.0, 10.0}) data.rows.push_back({ev_to_angular(w_ev), 0.0});
    data.low_freq_extension = {wp, g};
    const Material m("extension_only", std::move(data));

    for (double xi : {1e13, 2.5e14, 3e15}) {
        const double expected = 1.0 + oracles::drude_loss_quadrature(wp, g, W, xi);
        CHECK(m.eval(xi) == doctest::Approx(expected).epsilon(1e-6));
    }
    CHECK_THROWS_AS(m.eval(0.0), std::domain_error);
}

TEST_CASE("gold tabulated exceeds bare Drude through the interband range") {
    const Material tab = shipped("gold_tabulated");
    const Material drude = shipped("gold_drude");
    for (double xi : {1e15, 5e15, 1e16}) CHECK(tab.eval(xi) > drude.eval(xi));
    // Drude-dominated regime: the two models agree to a few percent.
    CHECK(tab.eval(1e13) == doctest::Approx(drude.eval(1e13)).epsilon(0.05));
}

TEST_CASE("material JSON validation errors carry the field name") {
    CHECK_THROWS_AS(material_from_json(R"({"name":"bad","eps_inf":0.5})"), ConfigError);
    CHECK_THROWS_AS(
        material_from_json(R"({"name":"bad","oscillators":[{"C":-1,"omega_ev":1}]})"),
        ConfigError);
    CHECK_THROWS_AS(
        material_from_json(R"({"name":"bad","oscillators":[{"C":1}]})"), ConfigError);
    CHECK_THROWS_AS(
        material_from_json(R"({"name":"bad","drude":{"omega_p_ev":9.0}})"), ConfigError);
    CHECK_THROWS_WITH_AS(material_from_json(R"({"name":"x","eps_inf":)"),
                         doctest::Contains("JSON"), ConfigError);
    CHECK_THROWS_AS(load_material_file("/nonexistent/never.json"), ConfigError);
}

TEST_CASE("loss table loader enforces ordering and format") {
    CHECK_THROWS_AS(load_loss_table("/nonexistent/table.dat"), ConfigError);
    TabulatedLossData bad;
    bad.rows = {{2.0e14, 0.1}, {1.0e14, 0.2}};
    CHECK_THROWS_AS(Material("bad", std::move(bad)), ConfigError);
    TabulatedLossData empty;
    CHECK_THROWS_AS(Material("empty", std::move(empty)), ConfigError);
    TabulatedLossData plasma_ext;
    plasma_ext.rows = {{1e14, 0.1}, {2e14, 0.05}};
    plasma_ext.low_freq_extension = {1e16, 0.0};  // no representable loss spectrum
    CHECK_THROWS_AS(Material("plasma", std::move(plasma_ext)), ConfigError);
}
