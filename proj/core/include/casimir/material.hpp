#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

/// Free-carrier term omega_p^2 / (xi (xi + gamma)) on the imaginary axis.
/// gamma == 0 selects the dissipationless plasma model.
struct DrudeTerm {
    double omega_p = 0.0;  // rad/s
    double gamma = 0.0;    // rad/s
};

/// Bound-charge resonance; contributes
///   strength * omega_res^2 / (omega_res^2 + xi^2 + damping xi)
/// on the imaginary axis. With damping == 0 this is the undamped
/// Ninham-Parsegian form C / (1 + (xi/omega_res)^2).
struct LorentzOscillator {
    double strength = 0.0;   // dimensionless
    double omega_res = 0.0;  // rad/s
    double damping = 0.0;    // rad/s
};

struct OscillatorModel {
    double eps_inf = 1.0;
    std::optional<DrudeTerm> drude;
    std::vector<LorentzOscillator> oscillators;
};

/// Measured loss spectrum eps''(omega) at real frequencies, continued to the
/// imaginary axis through the dispersion relation
///   eps(i xi) = 1 + (2/pi) Int_0^inf  omega eps''(omega) / (omega^2 + xi^2) domega.
/// The tabulated range is handled by quadrature with log-log interpolation;
/// frequencies below the first table row use the analytic Drude integral of
/// low_freq_extension.
struct TabulatedLossData {
    struct Row {
        double omega;     // rad/s, strictly increasing
        double eps_imag;  // >= 0
    };
    std::vector<Row> rows;
    DrudeTerm low_freq_extension;  // omega_p == 0 disables the extension
};

double eval_oscillator(const OscillatorModel& model, double xi);
double eval_tabulated(const TabulatedLossData& data, double xi);

class Material {
public:
    Material() = default;
    Material(std::string name, OscillatorModel model);
    Material(std::string name, TabulatedLossData data);

    const std::string& name() const { return name_; }

    /// Permittivity on the imaginary frequency axis.
    double eval(double xi) const;

    /// eps(0); throws std::domain_error for metals (Drude divergence).
    double eps_static() const;

    /// True when a free-carrier (Drude) term is present, i.e. eps ~ 1/xi at
    /// low frequency.
    bool is_metallic() const;

    /// The Drude term governing the low-frequency divergence, or nullptr.
    const DrudeTerm* drude() const;

private:
    std::string name_;
    std::variant<OscillatorModel, TabulatedLossData> model_;
};

/// Two-column text loss data (omega in eV, eps'' dimensionless), '#' comments.
std::vector<TabulatedLossData::Row> load_loss_table(const std::filesystem::path& path);

/// Material definition file (JSON schema
/// {name, eps_inf, drude{omega_p_ev, gamma_ev}, oscillators[{C, omega_ev,
/// damping_ev}], table_path}); table_path is resolved relative to the file.
Material load_material_file(const std::filesystem::path& path);

/// Same schema from an in-memory JSON string; table paths resolve against base_dir.
Material material_from_json(const std::string& json_text,
                            const std::filesystem::path& base_dir = ".");

}  // namespace casimir
