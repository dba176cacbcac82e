// experiment.hpp - Charging experiments: configuration, execution, and
// deterministic CSV + JSON summary output.

#pragma once

#include "qbat/matrix.hpp"
#include "qbat/observables.hpp"
#include "qbat/params.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbat {

// Bad configuration: unknown keys or kinds, invalid parameters, unwritable
// output directory. Maps to exit status 2.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

enum class ExperimentKind { CompareOmega, CompareDelta, Populations, ChargingSweep, Baselines, Validity };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

struct ExperimentSpec {
    ExperimentKind kind{ExperimentKind::Populations};

    // Base parameters. omega follows omega_ratio * omega_a and delta follows
    // delta_multiplier * g * n unless pinned explicitly.
    int n{101};
    double g{1e-3};
    double omega_a{10.0};
    double omega_ratio{-2.3};
    std::optional<double> omega;
    double delta_multiplier{10.0};
    std::optional<double> delta;

    std::vector<double> omega_a_values{10.0, 5.0, 1.0};
    std::vector<double> delta_multipliers{10.0, 5.0, 1.0};
    std::vector<int> n_values;

    std::optional<Index> samples;
    std::optional<double> t_end;
    // charging-sweep windows end at t_end_factor * pi / (2 lambda)
    double t_end_factor{1.5};

    double fraction{0.8};
    ErgotropyReference reference{ErgotropyReference::Analytic};
    bool breakdown_probe{false};

    std::filesystem::path out_dir{"."};
    unsigned workers{1};

    ModelParams params_for(int n_value, double omega_a_value, double delta_mult) const;
    ModelParams base_params() const { return params_for(n, omega_a, delta_multiplier); }

    // Throws ConfigError.
    void validate() const;
};

// Builds a spec for `kind` from the "paper-defaults" preset overlaid with a
// JSON config object. Unknown keys are rejected.
ExperimentSpec make_spec(ExperimentKind kind, const nlohmann::json& config = nlohmann::json::object());

nlohmann::json spec_to_json(const ExperimentSpec& spec);

// Default grid size: at least 2000 samples per pi/(2 lambda) and spacing no
// coarser than 0.1/delta.
Index default_samples(double t_end, double lambda, double delta);

struct ExperimentOutcome {
    std::vector<std::filesystem::path> files;
    nlohmann::json summary;
    std::vector<std::string> warnings;
};

ExperimentOutcome run_experiment(const ExperimentSpec& spec);

// Worker cap from QBAT_WORKERS, defaulting to the hardware concurrency.
unsigned workers_from_env();

// Fixed CSV number format: 12 significant digits.
std::string format_number(double v);

} // namespace qbat
