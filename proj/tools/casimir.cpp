#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitValidation = 4;

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> output_path;
    std::optional<std::string> format;
    std::optional<double> L_nm;
    std::optional<double> lambda_D_nm;
    std::optional<double> d_nm;
    std::optional<double> temperature_K;
    std::optional<std::string> gold_model;
    bool local_water = false;
    std::optional<int> jobs;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("-c,--config", opt.config_path, "run configuration file (JSON)")
        ->required();
    cmd->add_option("-o,--output", opt.output_path, "output path ('-' for stdout)");
    cmd->add_option("--format", opt.format, "output format: csv or json");
    cmd->add_option("--L-nm", opt.L_nm, "override separation L (nm)");
    cmd->add_option("--lambda-D-nm", opt.lambda_D_nm, "override Debye length (nm)");
    cmd->add_option("--d-nm", opt.d_nm, "override slab thickness (nm)");
    cmd->add_option("--temperature-K", opt.temperature_K, "override temperature (K)");
    cmd->add_option("--gold-model", opt.gold_model,
                    "slab material variant: drude or tabulated");
    cmd->add_flag("--local-water", opt.local_water,
                  "treat the gap response as local (DLP comparison mode)");
    cmd->add_option("--jobs", opt.jobs, "worker threads for sweeps");
}

casimir::RunConfig make_config(const CommonOptions& opt) {
    casimir::RunConfig config = casimir::load_run_config(opt.config_path);
    if (opt.L_nm) config.separation_L = *opt.L_nm * 1e-9;
    if (opt.lambda_D_nm) {
        config.lambda_D = *opt.lambda_D_nm * 1e-9;
        config.concentration_mol_per_L.reset();
    }
    if (opt.d_nm) config.thickness_d = *opt.d_nm * 1e-9;
    if (opt.temperature_K) config.temperature_K = *opt.temperature_K;
    if (opt.gold_model) {
        if (*opt.gold_model == "drude")
            config.gold_model = casimir::GoldModel::Drude;
        else if (*opt.gold_model == "tabulated")
            config.gold_model = casimir::GoldModel::Tabulated;
        else
            throw casimir::ConfigError("--gold-model must be 'drude' or 'tabulated'");
    }
    if (opt.local_water) config.local_water = true;
    if (opt.jobs) config.jobs = *opt.jobs;
    if (opt.output_path) config.output.path = *opt.output_path;
    if (opt.format) {
        if (*opt.format == "csv")
            config.output.format = casimir::OutputSpec::Format::Csv;
        else if (*opt.format == "json")
            config.output.format = casimir::OutputSpec::Format::Json;
        else
            throw casimir::ConfigError("--format must be 'csv' or 'json'");
    }
    config.validate();
    return config;
}

void write_output(const casimir::RunConfig& config, const std::string& text) {
    if (config.output.path == "-" || config.output.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output.path);
    if (!out)
        throw casimir::ConfigError("cannot open output file '" + config.output.path + "'");
    out << text;
}

std::string table_to_json(const casimir::cli::Table& t) {
    nlohmann::json j;
    j["comments"] = t.comments;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return j.dump(2) + "\n";
}

void emit_table(const casimir::RunConfig& config, const casimir::cli::Table& t) {
    const bool json = config.output.format == casimir::OutputSpec::Format::Json;
    write_output(config, json ? table_to_json(t) : casimir::cli::to_csv(t));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir-Lifshitz free energy across an electrolyte gap"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto* epsilon = app.add_subcommand(
        "epsilon", "dielectric functions of the three media on a log xi grid");
    auto* reflect = app.add_subcommand(
        "reflect", "reflection block amplitudes at one Matsubara order");
    auto* energy = app.add_subcommand(
        "energy", "Matsubara-summed free energy breakdown at one separation");
    auto* hamaker = app.add_subcommand(
        "hamaker", "Hamaker function sweep (total / without f0_TM / zero-frequency)");
    auto* validate = app.add_subcommand(
        "validate", "internal cross-validation report (JSON, nonzero exit on failure)");
    for (auto* cmd : {epsilon, reflect, energy, hamaker, validate}) add_common(cmd, opt);

    int reflect_n = 0;
    double k_min = 1e5, k_max = 1e9;
    int k_count = 30;
    reflect->add_option("--n", reflect_n, "Matsubara order (0 = zero frequency)");
    reflect->add_option("--k-min", k_min, "smallest transverse wavevector (1/m)");
    reflect->add_option("--k-max", k_max, "largest transverse wavevector (1/m)");
    reflect->add_option("--k-count", k_count, "number of k grid points");

    std::optional<double> sweep_min_nm, sweep_max_nm;
    std::optional<int> sweep_count;
    hamaker->add_option("--L-min-nm", sweep_min_nm, "sweep start (nm)");
    hamaker->add_option("--L-max-nm", sweep_max_nm, "sweep end (nm)");
    hamaker->add_option("--count", sweep_count, "sweep point count");

    CLI11_PARSE(app, argc, argv);

    try {
        casimir::RunConfig config = make_config(opt);

        if (epsilon->parsed()) {
            emit_table(config, casimir::cli::cmd_epsilon(config));
        } else if (reflect->parsed()) {
            emit_table(config,
                       casimir::cli::cmd_reflect(config, reflect_n, k_min, k_max, k_count));
        } else if (energy->parsed()) {
            const auto breakdown = casimir::cli::cmd_energy(config);
            write_output(config, casimir::cli::energy_to_json(config, breakdown));
        } else if (hamaker->parsed()) {
            if (sweep_min_nm || sweep_max_nm || sweep_count) {
                casimir::SweepSpec sweep;
                if (config.sweep) sweep = *config.sweep;
                sweep.variable = casimir::SweepSpec::Variable::SeparationL;
                if (sweep_min_nm) sweep.min = *sweep_min_nm * 1e-9;
                if (sweep_max_nm) sweep.max = *sweep_max_nm * 1e-9;
                if (sweep_count) sweep.count = *sweep_count;
                config.sweep = sweep;
                config.validate();
            }
            emit_table(config, casimir::cli::cmd_hamaker(config));
        } else if (validate->parsed()) {
            const auto report = casimir::cli::cmd_validate(config);
            write_output(config, casimir::cli::validation_to_json(report));
            if (!report.all_pass) {
                for (const auto& c : report.checks)
                    if (!c.pass)
                        std::cerr << "validation failed: " << c.name << " (measured "
                                  << c.measured << ", tolerance " << c.tolerance << ")\n";
                return kExitValidation;
            }
        }
        return kExitOk;
    } catch (const casimir::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const casimir::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
