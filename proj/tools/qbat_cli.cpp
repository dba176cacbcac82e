// qbat_cli.cpp - Command-line runner for the charging experiments
//
//   qbat <kind> [--config cfg.json] [--out dir] [--samples n] [--preset paper-defaults]
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure.

#include "qbat/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) {
        return nlohmann::json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw qbat::ConfigError("cannot open config " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw qbat::ConfigError("config " + path + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Superabsorbing quantum battery charging experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    long long samples = 0;
    std::string preset = "paper-defaults";

    for (const char* name : {"compare-omega", "compare-delta", "populations", "charging-sweep", "baselines",
                             "validity"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config overriding the preset");
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--samples", samples, "Time-grid samples (overrides the default rule)");
        sub->add_option("--preset", preset, "Parameter preset")->check(CLI::IsMember({"paper-defaults"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        const auto kind = qbat::parse_experiment_kind(app.get_subcommands().front()->get_name());
        nlohmann::json config = load_config(config_path);
        if (samples != 0) {
            config["samples"] = samples;
        }
        config["preset"] = preset;
        qbat::ExperimentSpec spec = qbat::make_spec(*kind, config);
        spec.out_dir = out_dir;
        spec.workers = qbat::workers_from_env();

        const qbat::ExperimentOutcome outcome = qbat::run_experiment(spec);
        for (const auto& w : outcome.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        for (const auto& f : outcome.files) {
            std::cout << f.string() << '\n';
        }
        const auto& results = outcome.summary.at("results");
        if (results.is_object() && results.contains("slope")) {
            std::cout << "slope " << qbat::format_number(results.at("slope").get<double>()) << '\n';
        }
        return 0;
    } catch (const qbat::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const qbat::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
