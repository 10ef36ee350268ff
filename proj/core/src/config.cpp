#include "casimir/config.hpp"

#include <fstream>

#include <json.hpp>

#include "casimir/constants.hpp"
#include "casimir/electrolyte.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

using nlohmann::json;

constexpr double kNm = 1e-9;
constexpr double kMinSeparation = 0.1e-9;  // bulk approximation floor
constexpr double kMinThickness = 1.0e-9;

double get_len_nm(const json& j, const char* key, double fallback_m) {
    return j.contains(key) ? j.at(key).get<double>() * kNm : fallback_m;
}

}  // namespace

void RunConfig::validate() const {
    if (temperature_K <= 0.0) throw ConfigError("config: temperature_K must be > 0");
    if (half_space_material.empty() || water_material.empty() || slab_material.empty())
        throw ConfigError("config: stack.half_space, stack.gap.water_material and "
                          "stack.slab.material are required");
    if (concentration_mol_per_L) {
        if (*concentration_mol_per_L <= 0.0)
            throw ConfigError("config: concentration_mol_per_L must be > 0");
    } else if (lambda_D <= 0.0) {
        throw ConfigError("config: lambda_D must be > 0");
    }
    if (gamma_ions < 0.0) throw ConfigError("config: gamma_ions_ev must be >= 0");
    if (ion_mass <= 0.0) throw ConfigError("config: ion_mass_u must be > 0");
    if (separation_L < kMinSeparation)
        throw ConfigError("config: separation L < 0.1 nm is outside the bulk "
                          "approximation regime");
    if (thickness_d < kMinThickness)
        throw ConfigError("config: slab thickness d < 1 nm is outside the bulk "
                          "approximation regime");
    quadrature.validate();
    if (sweep) {
        if (!(sweep->min < sweep->max))
            throw ConfigError("config: sweep.min_nm must be < sweep.max_nm");
        if (sweep->count < 2) throw ConfigError("config: sweep.count must be >= 2");
        if (sweep->min <= 0.0) throw ConfigError("config: sweep lengths must be > 0");
        if (sweep->variable == SweepSpec::Variable::SeparationL &&
            sweep->min < kMinSeparation)
            throw ConfigError("config: sweep over L extends below 0.1 nm");
    }
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
}

namespace {

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    RunConfig c;
    c.temperature_K = j.value("temperature_K", 300.0);

    if (!j.contains("stack")) throw ConfigError("config: missing 'stack'");
    const auto& stack = j.at("stack");

    if (!stack.contains("half_space"))
        throw ConfigError("config: missing stack.half_space");
    c.half_space_material = base_dir / stack.at("half_space").get<std::string>();

    if (!stack.contains("gap")) throw ConfigError("config: missing stack.gap");
    const auto& gap = stack.at("gap");
    if (!gap.contains("water_material"))
        throw ConfigError("config: missing stack.gap.water_material");
    c.water_material = base_dir / gap.at("water_material").get<std::string>();

    if (gap.contains("temperature_K")) c.temperature_K = gap.at("temperature_K").get<double>();

    if (gap.contains("lambda_D_nm")) {
        c.lambda_D = gap.at("lambda_D_nm").get<double>() * kNm;
        if (gap.contains("concentration_mol_per_L"))
            throw ConfigError("config: give lambda_D_nm or concentration_mol_per_L, not both");
    } else if (gap.contains("concentration_mol_per_L")) {
        // Resolved in build_stack once eps_b0 is known.
        c.concentration_mol_per_L = gap.at("concentration_mol_per_L").get<double>();
    } else {
        throw ConfigError("config: stack.gap needs lambda_D_nm or concentration_mol_per_L");
    }
    c.gamma_ions = ev_to_angular(gap.value("gamma_ions_ev", 1.9746e-9));
    c.ion_mass = gap.value("ion_mass_u", 23.0) * constants::atomic_mass_unit;
    c.separation_L = get_len_nm(gap, "separation_L_nm", 100e-9);

    if (!stack.contains("slab")) throw ConfigError("config: missing stack.slab");
    const auto& slab = stack.at("slab");
    if (!slab.contains("material"))
        throw ConfigError("config: missing stack.slab.material");
    c.slab_material = base_dir / slab.at("material").get<std::string>();
    c.thickness_d = get_len_nm(slab, "thickness_d_nm", 50e-9);

    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        c.quadrature.rel_tol = q.value("rel_tol", c.quadrature.rel_tol);
        c.quadrature.abs_tol = q.value("abs_tol", c.quadrature.abs_tol);
        c.quadrature.max_subdivisions =
            q.value("max_subdivisions", c.quadrature.max_subdivisions);
        c.quadrature.matsubara_tail_tol =
            q.value("matsubara_tail_tol", c.quadrature.matsubara_tail_tol);
    }

    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        SweepSpec sw;
        const std::string var = s.value("variable", std::string("L"));
        if (var == "L")
            sw.variable = SweepSpec::Variable::SeparationL;
        else if (var == "lambda_D")
            sw.variable = SweepSpec::Variable::DebyeLength;
        else
            throw ConfigError("config: sweep.variable must be 'L' or 'lambda_D'");
        if (!s.contains("min_nm") || !s.contains("max_nm") || !s.contains("count"))
            throw ConfigError("config: sweep needs min_nm, max_nm, count");
        sw.min = s.at("min_nm").get<double>() * kNm;
        sw.max = s.at("max_nm").get<double>() * kNm;
        sw.count = s.at("count").get<int>();
        c.sweep = sw;
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        const std::string fmt = o.value("format", std::string("csv"));
        if (fmt == "csv")
            c.output.format = OutputSpec::Format::Csv;
        else if (fmt == "json")
            c.output.format = OutputSpec::Format::Json;
        else
            throw ConfigError("config: output.format must be 'csv' or 'json'");
        c.output.path = o.value("path", std::string("-"));
    }

    c.local_water = j.value("local_water", false);
    c.jobs = j.value("jobs", 1);
    c.validate();
    return c;
}

Material load_slab_material(const RunConfig& c) {
    std::filesystem::path path = c.slab_material;
    if (c.gold_model == GoldModel::Drude)
        path = path.parent_path() / "gold_drude.json";
    else if (c.gold_model == GoldModel::Tabulated)
        path = path.parent_path() / "gold_tabulated.json";
    return load_material_file(path);
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j, path.parent_path());
}

RunConfig run_config_from_json(const std::string& json_text,
                               const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    return parse_config(j, base_dir);
}

LayerStack build_stack(const RunConfig& config) {
    Material half_space = load_material_file(config.half_space_material);
    Material water = load_material_file(config.water_material);
    Material slab = load_slab_material(config);

    double lambda_D = config.lambda_D;
    if (config.concentration_mol_per_L) {
        // Fully dissociated monovalent salt: two ions per formula unit.
        const double N = 2.0 * *config.concentration_mol_per_L * 1000.0 * 6.02214076e23;
        lambda_D = debye_length_from_concentration(N, water.eps_static(),
                                                   config.temperature_K);
    }

    ElectrolyteGap gap(std::move(water), lambda_D, config.gamma_ions, config.ion_mass,
                       config.temperature_K);
    return LayerStack(std::move(half_space), std::move(gap), config.separation_L,
                      std::move(slab), config.thickness_d);
}

}  // namespace casimir
