#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "casimir/engine.hpp"

namespace casimir {

struct SweepSpec {
    enum class Variable { SeparationL, DebyeLength };
    Variable variable = Variable::SeparationL;
    double min = 0.0;  // m, log-spaced grid
    double max = 0.0;  // m
    int count = 0;
};

struct OutputSpec {
    enum class Format { Csv, Json };
    Format format = Format::Csv;
    std::string path = "-";  // "-" means stdout
};

enum class GoldModel { FromConfig, Drude, Tabulated };

/// One run description: stack geometry, materials (by file path), electrolyte
/// parameters, quadrature settings, optional sweep, output. Parsed from a JSON
/// file; CLI flags override individual fields.
struct RunConfig {
    double temperature_K = 300.0;

    std::filesystem::path half_space_material;
    std::filesystem::path water_material;
    std::filesystem::path slab_material;

    double lambda_D = 100e-9;      // m; ignored when a concentration is given
    std::optional<double> concentration_mol_per_L;
    double gamma_ions = 0.0;       // rad/s
    double ion_mass = 0.0;         // kg
    double separation_L = 100e-9;  // m
    double thickness_d = 50e-9;    // m

    QuadratureSpec quadrature;
    std::optional<SweepSpec> sweep;
    OutputSpec output;

    bool local_water = false;      // DLP comparison mode (no longitudinal channel)
    GoldModel gold_model = GoldModel::FromConfig;
    int jobs = 1;

    /// Bulk-approximation floor: L >= 0.1 nm, d >= 1 nm; grids and tolerances.
    void validate() const;
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(const std::string& json_text,
                               const std::filesystem::path& base_dir = ".");

/// Loads the materials and assembles the immutable stack.
LayerStack build_stack(const RunConfig& config);

}  // namespace casimir
