#include "casimir/material.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

void validate_oscillator_model(const std::string& name, const OscillatorModel& m) {
    if (m.eps_inf < 1.0)
        throw ConfigError("material '" + name + "': eps_inf must be >= 1");
    if (m.drude) {
        if (m.drude->omega_p <= 0.0)
            throw ConfigError("material '" + name + "': drude.omega_p must be > 0");
        if (m.drude->gamma < 0.0)
            throw ConfigError("material '" + name + "': drude.gamma must be >= 0");
    }
    for (std::size_t i = 0; i < m.oscillators.size(); ++i) {
        const auto& o = m.oscillators[i];
        const std::string where =
            "material '" + name + "': oscillators[" + std::to_string(i) + "]";
        if (o.strength <= 0.0) throw ConfigError(where + ".C must be > 0");
        if (o.omega_res <= 0.0) throw ConfigError(where + ".omega_ev must be > 0");
        if (o.damping < 0.0) throw ConfigError(where + ".damping_ev must be >= 0");
    }
}

void validate_loss_data(const std::string& name, const TabulatedLossData& d) {
    if (d.rows.empty())
        throw ConfigError("material '" + name + "': tabulated loss data is empty");
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        if (d.rows[i].eps_imag < 0.0)
            throw ConfigError("material '" + name + "': eps'' must be >= 0 (row " +
                              std::to_string(i) + ")");
        if (i > 0 && d.rows[i].omega <= d.rows[i - 1].omega)
            throw ConfigError("material '" + name +
                              "': table frequencies must be strictly increasing (row " +
                              std::to_string(i) + ")");
    }
    if (d.rows.front().omega <= 0.0)
        throw ConfigError("material '" + name + "': table frequencies must be > 0");
    const auto& ext = d.low_freq_extension;
    if (ext.omega_p > 0.0 && ext.gamma <= 0.0)
        throw ConfigError("material '" + name +
                          "': a dissipationless low-frequency extension has no "
                          "representable loss spectrum; use an oscillator model");
    if (ext.omega_p < 0.0 || ext.gamma < 0.0)
        throw ConfigError("material '" + name + "': low-frequency extension must be >= 0");
}

// (2/pi) Int_0^W  [wp^2 g / (w (w^2+g^2))] * w/(w^2+xi^2) dw, the contribution
// of a Drude loss spectrum below the first tabulated frequency W.
double drude_tail_integral(const DrudeTerm& dr, double W, double xi) {
    if (dr.omega_p == 0.0) return 0.0;
    const double g = dr.gamma;
    const double pref = 2.0 * dr.omega_p * dr.omega_p * g / constants::pi;
    const double rel = std::abs(xi - g) / g;
    if (rel > 1e-6) {
        const double term = std::atan(W / g) / g - std::atan(W / xi) / xi;
        return pref * term / (xi * xi - g * g);
    }
    // xi ~= g: removable singularity, use the analytic limit.
    const double A = std::atan(W / g);
    return pref * (A / (g * g) + W / (g * (g * g + W * W))) / (2.0 * g);
}

// Kramers-Kronig integrand over one table interval with log-log (power-law)
// interpolation of eps''; falls back to linear when an endpoint loss is zero.
double interval_integral(const TabulatedLossData::Row& lo,
                         const TabulatedLossData::Row& hi, double xi) {
    const bool power_law = lo.eps_imag > 0.0 && hi.eps_imag > 0.0;
    double slope = 0.0;
    if (power_law)
        slope = std::log(hi.eps_imag / lo.eps_imag) / std::log(hi.omega / lo.omega);

    auto loss = [&](double w) {
        if (power_law) return lo.eps_imag * std::pow(w / lo.omega, slope);
        const double t = (w - lo.omega) / (hi.omega - lo.omega);
        return lo.eps_imag + t * (hi.eps_imag - lo.eps_imag);
    };
    auto f = [&](double w) { return w * loss(w) / (w * w + xi * xi); };

    const auto r = quad::integrate(f, lo.omega, hi.omega, 1e-9, 1e-14, 12);
    return r.value;
}

}  // namespace

double eval_oscillator(const OscillatorModel& model, double xi) {
    if (xi < 0.0) throw std::domain_error("eval_oscillator: xi must be >= 0");
    if (xi == 0.0 && model.drude && model.drude->omega_p > 0.0)
        throw std::domain_error("eval_oscillator: Drude term diverges at zero frequency");

    double eps = model.eps_inf;
    for (const auto& o : model.oscillators) {
        const double w2 = o.omega_res * o.omega_res;
        eps += o.strength * w2 / (w2 + xi * xi + o.damping * xi);
    }
    if (model.drude && model.drude->omega_p > 0.0)
        eps += model.drude->omega_p * model.drude->omega_p /
               (xi * (xi + model.drude->gamma));
    return eps;
}

double eval_tabulated(const TabulatedLossData& data, double xi) {
    if (data.rows.empty()) throw ConfigError("eval_tabulated: empty loss table");
    if (xi < 0.0) throw std::domain_error("eval_tabulated: xi must be >= 0");
    if (xi == 0.0 && data.low_freq_extension.omega_p > 0.0)
        throw std::domain_error("eval_tabulated: Drude extension diverges at zero frequency");

    double kk = 0.0;
    for (std::size_t i = 0; i + 1 < data.rows.size(); ++i)
        kk += interval_integral(data.rows[i], data.rows[i + 1], xi);

    return 1.0 + (2.0 / constants::pi) * kk +
           drude_tail_integral(data.low_freq_extension, data.rows.front().omega, xi);
}

Material::Material(std::string name, OscillatorModel model)
    : name_(std::move(name)), model_(std::move(model)) {
    validate_oscillator_model(name_, std::get<OscillatorModel>(model_));
}

Material::Material(std::string name, TabulatedLossData data)
    : name_(std::move(name)), model_(std::move(data)) {
    validate_loss_data(name_, std::get<TabulatedLossData>(model_));
}

double Material::eval(double xi) const {
    if (const auto* m = std::get_if<OscillatorModel>(&model_))
        return eval_oscillator(*m, xi);
    return eval_tabulated(std::get<TabulatedLossData>(model_), xi);
}

double Material::eps_static() const {
    if (is_metallic())
        throw std::domain_error("eps_static: material '" + name_ +
                                "' is metallic at zero frequency");
    if (const auto* m = std::get_if<OscillatorModel>(&model_)) {
        double eps = m->eps_inf;
        for (const auto& o : m->oscillators) eps += o.strength;
        return eps;
    }
    return eval_tabulated(std::get<TabulatedLossData>(model_), 0.0);
}

bool Material::is_metallic() const {
    const DrudeTerm* d = drude();
    return d != nullptr && d->omega_p > 0.0;
}

const DrudeTerm* Material::drude() const {
    if (const auto* m = std::get_if<OscillatorModel>(&model_))
        return m->drude ? &*m->drude : nullptr;
    const auto& t = std::get<TabulatedLossData>(model_);
    return t.low_freq_extension.omega_p > 0.0 ? &t.low_freq_extension : nullptr;
}

std::vector<TabulatedLossData::Row> load_loss_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open loss table '" + path.string() + "'");

    std::vector<TabulatedLossData::Row> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double w_ev, loss;
        if (!(ss >> w_ev)) continue;  // blank line
        if (!(ss >> loss))
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected two columns (omega_eV eps'')");
        rows.push_back({ev_to_angular(w_ev), loss});
    }
    return rows;
}

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& ctx, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(ctx + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

Material material_from_parsed(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("material definition must be a JSON object");
    const std::string name = j.value("name", std::string("unnamed"));
    const std::string ctx = "material '" + name + "'";

    std::optional<DrudeTerm> drude;
    if (j.contains("drude")) {
        const auto& d = j.at("drude");
        drude = DrudeTerm{ev_to_angular(require_number(d, ctx + ".drude", "omega_p_ev")),
                          ev_to_angular(require_number(d, ctx + ".drude", "gamma_ev"))};
    }

    if (j.contains("table_path")) {
        TabulatedLossData data;
        const auto table = base_dir / j.at("table_path").get<std::string>();
        data.rows = load_loss_table(table);
        if (drude) data.low_freq_extension = *drude;
        return Material(name, std::move(data));
    }

    OscillatorModel model;
    model.eps_inf = j.value("eps_inf", 1.0);
    model.drude = drude;
    if (j.contains("oscillators")) {
        if (!j.at("oscillators").is_array())
            throw ConfigError(ctx + ": 'oscillators' must be an array");
        for (const auto& o : j.at("oscillators")) {
            LorentzOscillator osc;
            osc.strength = require_number(o, ctx + ".oscillators", "C");
            osc.omega_res = ev_to_angular(require_number(o, ctx + ".oscillators", "omega_ev"));
            osc.damping = ev_to_angular(o.value("damping_ev", 0.0));
            model.oscillators.push_back(osc);
        }
    }
    return Material(name, std::move(model));
}

}  // namespace

Material load_material_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open material file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return material_from_parsed(j, path.parent_path());
}

Material material_from_json(const std::string& json_text,
                            const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("material JSON: ") + e.what());
    }
    return material_from_parsed(j, base_dir);
}

}  // namespace casimir
