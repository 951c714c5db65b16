#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "offaxis/doublet.hpp"
#include "offaxis/fieldgrid.hpp"
#include "offaxis/singlet.hpp"

namespace offaxis::cli {

enum class Scheme { Singlet, Doublet };
enum class Experiment { Propagate, Exchange, OracleCompare, Detect, Dispersion, Sweep };
enum class ProbeInput { Uniform, Exchange };
enum class SweepAxis { L1, StrengthRatio, Delta2f, Delta, Z };

struct OracleSettings {
    int steps = 1000;
    double tolerance = 1e-6;
    bool check_convergence = true;
    bool exact = false;          ///< also run the non-adiabatic stationary-atom integrator (singlet)
    double probe_coupling = 1e-2;
    int decimation = 8;          ///< exact integrator grid coarsening; 1 = full grid
};

struct DispersionSettings {
    double delta_2f_min = -6.0;
    double delta_2f_max = 6.0;
    int count = 121;
    std::optional<double> radius;  ///< empty: radius of peak E_c
};

struct SweepSettings {
    SweepAxis axis = SweepAxis::L1;
    std::vector<double> values;
};

struct RunConfig {
    Scheme scheme = Scheme::Singlet;
    Experiment experiment = Experiment::Propagate;
    std::string output_dir = "out";
    bool quiet = false;

    GridSpec grid;
    SingletParams singlet;
    DoubletParams doublet = doublet::default_params(1);

    ProbeInput probes = ProbeInput::Uniform;
    complex amplitude{1.0, 0.0};

    OracleSettings oracle;
    DispersionSettings dispersion;
    int min_separation_cells = 3;
    std::optional<SweepSettings> sweep;

    std::vector<std::string> warnings;  ///< soft validation findings, filled by validate()

    /// Re-checks every invariant of the selected scheme and experiment; throws ValidationError.
    void validate();
};

/// Parses the `key = value` / `[section]` document. Unknown sections or keys, malformed values,
/// and invariant violations raise ValidationError naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved document; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

/// Flat `section.key = value` pairs of the resolved configuration, in serialization order.
std::vector<std::pair<std::string, std::string>> flatten_config(const RunConfig& config);

std::string to_string(Scheme s);
std::string to_string(Experiment e);
std::string to_string(ProbeInput p);
std::string to_string(SweepAxis a);
std::optional<Experiment> experiment_from_string(std::string_view name);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Applies one sweep value to a copy of the configuration (no validation).
RunConfig apply_sweep_value(const RunConfig& base, SweepAxis axis, double value);

}  // namespace offaxis::cli
