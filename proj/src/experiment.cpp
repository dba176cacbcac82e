// experiment.cpp - Experiment runner behind the qbat CLI

#include "qbat/experiment.hpp"

#include "qbat/dynamics.hpp"
#include "qbat/models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <set>
#include <thread>

namespace qbat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------- output

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : path_(path) {
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) {
            throw ConfigError("cannot write " + path.string());
        }
        write_cells(header);
    }

    void row(const std::vector<std::string>& cells) { write_cells(cells); }

    void row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) {
            cells.push_back(format_number(v));
        }
        write_cells(cells);
    }

private:
    void write_cells(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
        if (!out_) {
            throw ConfigError("write failed for " + path_.string());
        }
    }

    fs::path path_;
    std::ofstream out_;
};

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

// Compact, filename-safe rendering of a sweep value ("10", "0.5", "2.5e-05").
std::string value_tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// ---------------------------------------------------------------- workers

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    const auto threads = static_cast<std::size_t>(std::max(1u, workers));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 1 || count <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(threads, count); ++t) {
            pool.emplace_back(drain);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// ---------------------------------------------------------------- helpers

json validity_json(const ValidityReport& rep) {
    json margins = json::array();
    for (std::size_t i = 0; i < rep.margins.mu.size(); ++i) {
        margins.push_back({{"mu", rep.margins.mu[i]}, {"margin", rep.margins.margins[i]}});
    }
    return {{"r1_gN_over_delta", rep.r1},
            {"r2_delta_over_omega_a", rep.r2},
            {"r3_omega_a_over_abs_omega", rep.r3},
            {"amp_max", rep.amp_max},
            {"family_max", rep.family_max},
            {"t_char", rep.t_char},
            {"gN_t_char", rep.coupling_time},
            {"delta_t_char", rep.detuning_time},
            {"resonance", margins},
            {"min_margin", rep.margins.min_margin()},
            {"exact_resonance", rep.exact_resonance},
            {"flags", rep.flags}};
}

json params_json(const ModelParams& p) {
    return {{"n", p.n}, {"omega_a", p.omega_a}, {"omega", p.omega}, {"g", p.g}, {"delta", p.delta}};
}

void note_margin(const ModelParams& p, const ValidityReport& rep, std::vector<std::string>& warnings) {
    if (rep.margins.min_margin() < kMarginWarnThreshold) {
        warnings.push_back("resonance margin " + format_number(rep.margins.min_margin()) + " below " +
                           format_number(kMarginWarnThreshold) + " (" + describe(p) + ")");
    }
}

TimeGrid grid_for(const ExperimentSpec& spec, double default_t_end, double lambda, double delta) {
    const double t_end = spec.t_end.value_or(default_t_end);
    const Index samples = spec.samples.value_or(default_samples(t_end, lambda, delta));
    return TimeGrid::make(t_end, samples);
}

ModelParams checked_params(const ExperimentSpec& spec, int n, double omega_a, double mult) {
    try {
        ModelParams p = spec.params_for(n, omega_a, mult);
        p.validate();
        return p;
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

// ---------------------------------------------------------------- compare

struct Comparison {
    ModelParams params;
    TimeGrid grid;
    TimeSeries exact;
    TimeSeries effective;
};

Comparison compare_models(const ExperimentSpec& spec, const ModelParams& p) {
    const double lambda = lambda_rate(p);
    Comparison c{p, grid_for(spec, kPi / lambda, lambda, p.delta), {}, {}};
    const StateVector psi0 = initial_state(p, ModelKind::Exact);
    c.exact = evolve(build_model(p, ModelKind::Exact), psi0, c.grid);
    c.effective = evolve(build_model(p, ModelKind::Effective), psi0, c.grid);
    return c;
}

json write_comparison(const Comparison& c, const fs::path& file, const char* sweep_key, double sweep_value) {
    CsvWriter csv(file, {"t", "p01_exact", "p01_eff"});
    const auto& ex = c.exact.channel(kB01);
    const auto& ef = c.effective.channel(kB01);
    const double lambda = lambda_rate(c.params);
    const double period = kPi / lambda;
    double deviation = 0.0;
    double peak = -1.0;
    double peak_time = 0.0;
    for (std::size_t k = 0; k < c.exact.size(); ++k) {
        const double t = c.exact.times[k];
        csv.row(std::vector<double>{t, ex[k], ef[k]});
        if (t <= period * (1.0 + 1e-12)) {
            deviation = std::max(deviation, std::abs(ex[k] - ef[k]));
            if (ex[k] > peak) {
                peak = ex[k];
                peak_time = t;
            }
        }
    }
    return {{sweep_key, sweep_value},
            {"params", params_json(c.params)},
            {"file", file.filename().string()},
            {"lambda", lambda},
            {"half_period", kPi / (2.0 * lambda)},
            {"t_end", c.grid.t_end},
            {"samples", c.grid.samples},
            {"max_abs_deviation", deviation},
            {"p01_exact_peak", peak},
            {"p01_exact_peak_time", peak_time},
            {"leakage_exact", leakage(c.exact)},
            {"validity", validity_json(validity_diagnostics(c.params))}};
}

// Shared body of compare-omega and compare-delta.
json run_compare(const ExperimentSpec& spec, ExperimentOutcome& outcome, const std::vector<double>& values,
                 bool sweep_omega) {
    std::vector<ModelParams> points;
    for (double v : values) {
        points.push_back(sweep_omega ? checked_params(spec, spec.n, v, spec.delta_multiplier)
                                     : checked_params(spec, spec.n, spec.omega_a, v));
    }
    std::vector<json> rows(points.size());
    std::vector<fs::path> files(points.size());
    parallel_for(points.size(), spec.workers, [&](std::size_t i) {
        const Comparison c = compare_models(spec, points[i]);
        files[i] = spec.out_dir / ((sweep_omega ? "compare_omega_wA_" : "compare_delta_x") + value_tag(values[i]) +
                                   ".csv");
        rows[i] = write_comparison(c, files[i], sweep_omega ? "omega_a" : "delta_multiplier", values[i]);
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
        outcome.files.push_back(files[i]);
        note_margin(points[i], validity_diagnostics(points[i]), outcome.warnings);
    }
    return rows;
}

// ---------------------------------------------------------------- kinds

json run_populations(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
    const ModelParams p = checked_params(spec, spec.n, spec.omega_a, spec.delta_multiplier);
    const double lambda = lambda_rate(p);
    const TimeGrid grid = grid_for(spec, kPi / lambda, lambda, p.delta);
    const BuiltModel model = build_model(p, ModelKind::Exact);
    TimeSeries series = evolve(model, initial_state(p, ModelKind::Exact), grid);
    fill_ergotropy(series, model.h_battery);

    const fs::path file = spec.out_dir / "populations.csv";
    CsvWriter csv(file, {"t", "p00", "p01", "p10", "p11"});
    for (std::size_t k = 0; k < series.size(); ++k) {
        csv.row(std::vector<double>{series.times[k], series.populations[kB00][k], series.populations[kB01][k],
                                    series.populations[kB10][k], series.populations[kB11][k]});
    }
    outcome.files.push_back(file);

    const auto& p01 = series.channel(kB01);
    const auto peak_it = std::max_element(p01.begin(), p01.end());
    const ValidityReport rep = validity_diagnostics(p);
    note_margin(p, rep, outcome.warnings);
    const ChargingResult charge = charging_time(series, p, spec.fraction, spec.reference);
    json tau = charge.tau ? json(*charge.tau) : json(nullptr);
    return {{"params", params_json(p)},
            {"file", file.filename().string()},
            {"lambda", lambda},
            {"t_end", grid.t_end},
            {"samples", grid.samples},
            {"leakage", leakage(series)},
            {"p01_peak", *peak_it},
            {"p01_peak_time", series.times[static_cast<std::size_t>(peak_it - p01.begin())]},
            {"tau", tau},
            {"peak_ergotropy", charge.peak_ergotropy},
            {"validity", validity_json(rep)}};
}

struct SweepRow {
    ModelParams params;
    double lambda{0.0};
    ChargingResult result;
    double tau_effective{0.0};
    Index samples{0};
};

SweepRow sweep_point(const ExperimentSpec& spec, const ModelParams& p) {
    check_charging_threshold(p, spec.fraction);
    SweepRow row;
    row.params = p;
    row.lambda = lambda_rate(p);
    const TimeGrid grid = grid_for(spec, spec.t_end_factor * kPi / (2.0 * row.lambda), row.lambda, p.delta);
    row.samples = grid.samples;
    const BuiltModel model = build_model(p, ModelKind::Exact);
    TimeSeries series = evolve(model, initial_state(p, ModelKind::Exact), grid);
    fill_ergotropy(series, model.h_battery);
    row.result = charging_time(series, p, spec.fraction, spec.reference);
    row.tau_effective = effective_charging_time(p, spec.fraction);
    return row;
}

int next_probe_n(int n) {
    int next = static_cast<int>(std::ceil(1.3 * n));
    if (next % 2 == 0) ++next;
    return std::max(next, n + 2);
}

json run_charging_sweep(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
    std::vector<ModelParams> points;
    for (int n : spec.n_values) {
        points.push_back(checked_params(spec, n, spec.omega_a, spec.delta_multiplier));
        try {
            check_charging_threshold(points.back(), spec.fraction);
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    std::vector<SweepRow> rows(points.size());
    parallel_for(points.size(), spec.workers, [&](std::size_t i) { rows[i] = sweep_point(spec, points[i]); });

    const std::size_t main_rows = rows.size();
    if (spec.breakdown_probe && !rows.empty() && rows.back().result.achieved()) {
        const double limit = 2.0 * spec.omega_a / (10.0 * spec.g);
        for (int n = next_probe_n(rows.back().params.n); n <= limit; n = next_probe_n(n)) {
            ModelParams p = checked_params(spec, n, spec.omega_a, spec.delta_multiplier);
            if (p.epsilon1() >= spec.fraction * p.epsilon2()) {
                break;
            }
            rows.push_back(sweep_point(spec, p));
            if (!rows.back().result.achieved()) {
                break;
            }
        }
    }

    const fs::path file = spec.out_dir / "charging_sweep.csv";
    CsvWriter csv(file, {"N", "lambda", "tau", "tau_effective", "peak_ergotropy", "max_ergotropy_ref", "leakage",
                         "achieved", "probe"});
    std::vector<std::pair<double, std::optional<double>>> exact_points;
    std::vector<std::pair<double, std::optional<double>>> effective_points;
    json table = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        const bool probe = i >= main_rows;
        csv.row(std::vector<std::string>{std::to_string(r.params.n), format_number(r.lambda),
                                         r.result.tau ? format_number(*r.result.tau) : std::string{},
                                         format_number(r.tau_effective), format_number(r.result.peak_ergotropy),
                                         format_number(r.result.max_ergotropy_ref), format_number(r.result.leakage),
                                         r.result.achieved() ? "1" : "0", probe ? "1" : "0"});
        if (!probe) {
            exact_points.emplace_back(r.params.n, r.result.tau);
            effective_points.emplace_back(r.params.n, r.tau_effective);
        }
        if (!r.result.achieved()) {
            outcome.warnings.push_back("charging threshold not reached at N=" + std::to_string(r.params.n));
        }
        note_margin(r.params, validity_diagnostics(r.params), outcome.warnings);
        table.push_back({{"N", r.params.n},
                         {"tau", r.result.tau ? json(*r.result.tau) : json(nullptr)},
                         {"samples", r.samples},
                         {"probe", probe}});
    }
    outcome.files.push_back(file);

    json summary = {{"file", file.filename().string()}, {"rows", table}};
    auto fit_json = [](const ScalingFit& f) {
        return json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual},
                    {"used", f.used}, {"excluded", f.excluded}};
    };
    const std::size_t achieved = static_cast<std::size_t>(
        std::count_if(exact_points.begin(), exact_points.end(), [](const auto& pt) { return pt.second.has_value(); }));
    if (achieved >= 3) {
        const ScalingFit fit = scaling_fit(exact_points);
        if (fit.excluded > 0) {
            outcome.warnings.push_back(std::to_string(fit.excluded) + " NotAchieved point(s) excluded from the fit");
        }
        summary["fit_exact"] = fit_json(fit);
        summary["slope"] = fit.slope;
        summary["residual"] = fit.residual;
    } else {
        summary["fit_exact"] = nullptr;
        outcome.warnings.push_back("fewer than 3 achieved points; no scaling fit");
    }
    if (effective_points.size() >= 3) {
        summary["fit_effective"] = fit_json(scaling_fit(effective_points));
    }
    const BreakdownEstimate be = breakdown_estimate(points.empty() ? spec.base_params() : points.back());
    summary["n_star"] = {{"omega_a_over_delta_at_largest_n", be.at_params}, {"solved_10gN_eq_omega_a", be.solved}};
    return summary;
}

json run_baselines(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
    const double threshold_analytic_factor = std::asin(std::sqrt(spec.fraction));
    std::vector<TimeSeries> sims(spec.n_values.size());
    std::vector<TimeGrid> grids(spec.n_values.size());
    parallel_for(spec.n_values.size(), spec.workers, [&](std::size_t i) {
        const int n = spec.n_values[i];
        const double rate = std::sqrt(static_cast<double>(n)) * spec.g;
        grids[i] = TimeGrid::make(spec.t_end.value_or(kPi / (2.0 * rate)), spec.samples.value_or(2001));
        sims[i] = evolve(separable_model_hamiltonian(n, spec.g, spec.omega_a), separable_initial_state(n), grids[i]);
    });

    const fs::path scaling_file = spec.out_dir / "baselines_scaling.csv";
    CsvWriter scaling(scaling_file, {"N", "tau_analytic", "tau_sim"});
    std::vector<std::pair<double, std::optional<double>>> analytic_pts;
    std::vector<std::pair<double, std::optional<double>>> sim_pts;
    json table = json::array();
    for (std::size_t i = 0; i < spec.n_values.size(); ++i) {
        const int n = spec.n_values[i];
        const fs::path file = spec.out_dir / ("baselines_N" + std::to_string(n) + ".csv");
        CsvWriter csv(file, {"t", "p1_analytic", "p1_sim"});
        const auto& p1 = sims[i].channel(1);
        double worst = 0.0;
        for (std::size_t k = 0; k < sims[i].size(); ++k) {
            const double t = sims[i].times[k];
            const double analytic =
                n == 1 ? baseline_single_population(spec.g, t) : baseline_separable_population(n, spec.g, t);
            worst = std::max(worst, std::abs(analytic - p1[k]));
            csv.row(std::vector<double>{t, analytic, p1[k]});
        }
        outcome.files.push_back(file);

        const double tau_analytic = threshold_analytic_factor / (std::sqrt(static_cast<double>(n)) * spec.g);
        const std::optional<double> tau_sim = first_crossing(sims[i].times, p1, spec.fraction);
        scaling.row(std::vector<std::string>{std::to_string(n), format_number(tau_analytic),
                                             tau_sim ? format_number(*tau_sim) : std::string{}});
        analytic_pts.emplace_back(n, tau_analytic);
        sim_pts.emplace_back(n, tau_sim);
        table.push_back({{"N", n},
                         {"file", file.filename().string()},
                         {"tau_analytic", tau_analytic},
                         {"tau_sim", tau_sim ? json(*tau_sim) : json(nullptr)},
                         {"max_abs_deviation", worst}});
    }
    outcome.files.push_back(scaling_file);

    json summary = {{"file", scaling_file.filename().string()}, {"threshold", spec.fraction}, {"rows", table}};
    if (analytic_pts.size() >= 3) {
        const ScalingFit fa = scaling_fit(analytic_pts);
        summary["slope_analytic"] = fa.slope;
        const std::size_t achieved = static_cast<std::size_t>(
            std::count_if(sim_pts.begin(), sim_pts.end(), [](const auto& pt) { return pt.second.has_value(); }));
        if (achieved >= 3) {
            const ScalingFit fs_ = scaling_fit(sim_pts);
            summary["slope"] = fs_.slope;
            summary["residual"] = fs_.residual;
        }
    }
    return summary;
}

json run_validity(const ExperimentSpec& spec, ExperimentOutcome& outcome) {
    const fs::path file = spec.out_dir / "validity.csv";
    CsvWriter csv(file, {"N", "r1", "r2", "r3", "amp_max", "gN_t_char", "delta_t_char", "min_margin", "flags"});
    json reports = json::array();
    for (int n : spec.n_values) {
        const ModelParams p = checked_params(spec, n, spec.omega_a, spec.delta_multiplier);
        const ValidityReport rep = validity_diagnostics(p);
        note_margin(p, rep, outcome.warnings);
        std::string flags;
        for (const auto& f : rep.flags) {
            if (!flags.empty()) flags += ';';
            flags += f;
        }
        csv.row(std::vector<std::string>{std::to_string(n), format_number(rep.r1), format_number(rep.r2),
                                         format_number(rep.r3), format_number(rep.amp_max),
                                         format_number(rep.coupling_time), format_number(rep.detuning_time),
                                         format_number(rep.margins.min_margin()), flags});
        json entry = validity_json(rep);
        entry["params"] = params_json(p);
        reports.push_back(entry);
    }
    outcome.files.push_back(file);
    return {{"file", file.filename().string()}, {"reports", reports}};
}

} // namespace

// ---------------------------------------------------------------- public

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::CompareOmega: return "compare-omega";
    case ExperimentKind::CompareDelta: return "compare-delta";
    case ExperimentKind::Populations: return "populations";
    case ExperimentKind::ChargingSweep: return "charging-sweep";
    case ExperimentKind::Baselines: return "baselines";
    case ExperimentKind::Validity: return "validity";
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
    for (auto kind : {ExperimentKind::CompareOmega, ExperimentKind::CompareDelta, ExperimentKind::Populations,
                      ExperimentKind::ChargingSweep, ExperimentKind::Baselines, ExperimentKind::Validity}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

unsigned workers_from_env() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QBAT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<unsigned>(std::min<long>(v, hw));
        }
    }
    return hw;
}

Index default_samples(double t_end, double lambda, double delta) {
    const double per_half_period = 2000.0 * t_end / (kPi / (2.0 * lambda));
    const double ripple = t_end * delta / 0.1;
    // absorb round-off so an exact multiple does not gain an extra sample
    const double intervals = std::max({per_half_period, ripple, 1.0});
    return static_cast<Index>(std::ceil(intervals * (1.0 - 1e-12))) + 1;
}

ModelParams ExperimentSpec::params_for(int n_value, double omega_a_value, double delta_mult) const {
    ModelParams p;
    p.n = n_value;
    p.g = g;
    p.omega_a = omega_a_value;
    p.omega = omega.value_or(omega_ratio * omega_a_value);
    p.delta = delta.value_or(delta_mult * g * n_value);
    return p;
}

void ExperimentSpec::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
    if (samples && *samples < 2) fail("samples must be >= 2");
    if (t_end && !(*t_end > 0.0)) fail("t_end must be positive");
    if (!(t_end_factor > 0.0)) fail("t_end_factor must be positive");
    if (!(fraction > 0.0 && fraction < 1.0)) fail("fraction must lie in (0, 1)");
    if (!(g > 0.0)) fail("g must be positive");
    if (!(omega_a > 0.0)) fail("omega_a must be positive");

    switch (kind) {
    case ExperimentKind::CompareOmega:
        if (omega_a_values.empty()) fail("omega_a_values must be non-empty");
        for (double v : omega_a_values) checked_params(*this, n, v, delta_multiplier);
        break;
    case ExperimentKind::CompareDelta:
        if (delta_multipliers.empty()) fail("delta_multipliers must be non-empty");
        for (double v : delta_multipliers) checked_params(*this, n, omega_a, v);
        break;
    case ExperimentKind::Populations:
        checked_params(*this, n, omega_a, delta_multiplier);
        break;
    case ExperimentKind::ChargingSweep:
    case ExperimentKind::Validity:
        if (n_values.empty()) fail("n_values must be non-empty");
        for (int v : n_values) checked_params(*this, v, omega_a, delta_multiplier);
        break;
    case ExperimentKind::Baselines:
        if (n_values.empty()) fail("n_values must be non-empty");
        for (int v : n_values) {
            if (v < 1) fail("baseline N must be >= 1");
        }
        break;
    }
}

ExperimentSpec make_spec(ExperimentKind kind, const json& config) {
    if (!config.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    static const std::set<std::string> known = {
        "preset", "n", "g", "omega_a", "omega_ratio", "omega", "delta_multiplier", "delta", "omega_a_values",
        "delta_multipliers", "n_values", "samples", "t_end", "t_end_factor", "fraction", "ergotropy_reference",
        "breakdown_probe"};
    for (const auto& item : config.items()) {
        if (!known.count(item.key())) {
            throw ConfigError("config: unknown key '" + item.key() + "'");
        }
    }

    ExperimentSpec spec;
    spec.kind = kind;
    switch (kind) {
    case ExperimentKind::Populations:
        spec.n = 31;
        break;
    case ExperimentKind::ChargingSweep:
        for (int n = 11; n <= 101; n += 10) spec.n_values.push_back(n);
        break;
    case ExperimentKind::Baselines:
        spec.n_values = {1, 9, 25, 49};
        spec.fraction = 0.9;
        break;
    default:
        break;
    }

    try {
        if (config.contains("preset") && config.at("preset").get<std::string>() != "paper-defaults") {
            throw ConfigError("config: unknown preset '" + config.at("preset").get<std::string>() + "'");
        }
        auto take = [&](const char* key, auto& field) {
            if (config.contains(key)) {
                field = config.at(key).get<std::remove_reference_t<decltype(field)>>();
            }
        };
        take("n", spec.n);
        take("g", spec.g);
        take("omega_a", spec.omega_a);
        take("omega_ratio", spec.omega_ratio);
        take("delta_multiplier", spec.delta_multiplier);
        take("omega_a_values", spec.omega_a_values);
        take("delta_multipliers", spec.delta_multipliers);
        take("n_values", spec.n_values);
        take("t_end_factor", spec.t_end_factor);
        take("fraction", spec.fraction);
        take("breakdown_probe", spec.breakdown_probe);
        if (config.contains("omega")) spec.omega = config.at("omega").get<double>();
        if (config.contains("delta")) spec.delta = config.at("delta").get<double>();
        if (config.contains("samples")) spec.samples = config.at("samples").get<Index>();
        if (config.contains("t_end")) spec.t_end = config.at("t_end").get<double>();
        if (config.contains("ergotropy_reference")) {
            const auto ref = config.at("ergotropy_reference").get<std::string>();
            if (ref == "analytic") {
                spec.reference = ErgotropyReference::Analytic;
            } else if (ref == "trajectory") {
                spec.reference = ErgotropyReference::TrajectoryMax;
            } else {
                throw ConfigError("config: ergotropy_reference must be 'analytic' or 'trajectory'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (kind == ExperimentKind::Validity && spec.n_values.empty()) {
        spec.n_values = {spec.n};
    }
    return spec;
}

json spec_to_json(const ExperimentSpec& spec) {
    json j = {{"kind", to_string(spec.kind)},
              {"preset", "paper-defaults"},
              {"n", spec.n},
              {"g", spec.g},
              {"omega_a", spec.omega_a},
              {"omega_ratio", spec.omega_ratio},
              {"delta_multiplier", spec.delta_multiplier},
              {"fraction", spec.fraction},
              {"ergotropy_reference", spec.reference == ErgotropyReference::Analytic ? "analytic" : "trajectory"},
              {"t_end_factor", spec.t_end_factor},
              {"breakdown_probe", spec.breakdown_probe}};
    j["omega"] = spec.omega ? json(*spec.omega) : json(nullptr);
    j["delta"] = spec.delta ? json(*spec.delta) : json(nullptr);
    j["samples"] = spec.samples ? json(*spec.samples) : json(nullptr);
    j["t_end"] = spec.t_end ? json(*spec.t_end) : json(nullptr);
    switch (spec.kind) {
    case ExperimentKind::CompareOmega: j["omega_a_values"] = spec.omega_a_values; break;
    case ExperimentKind::CompareDelta: j["delta_multipliers"] = spec.delta_multipliers; break;
    case ExperimentKind::Populations: break;
    default: j["n_values"] = spec.n_values; break;
    }
    return j;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    if (ec || !fs::is_directory(spec.out_dir)) {
        throw ConfigError("cannot create output directory " + spec.out_dir.string());
    }

    ExperimentOutcome outcome;
    json results;
    switch (spec.kind) {
    case ExperimentKind::CompareOmega:
        results = run_compare(spec, outcome, spec.omega_a_values, true);
        break;
    case ExperimentKind::CompareDelta:
        results = run_compare(spec, outcome, spec.delta_multipliers, false);
        break;
    case ExperimentKind::Populations:
        results = run_populations(spec, outcome);
        break;
    case ExperimentKind::ChargingSweep:
        results = run_charging_sweep(spec, outcome);
        break;
    case ExperimentKind::Baselines:
        results = run_baselines(spec, outcome);
        break;
    case ExperimentKind::Validity:
        results = run_validity(spec, outcome);
        break;
    }

    std::string kind_name{to_string(spec.kind)};
    std::replace(kind_name.begin(), kind_name.end(), '-', '_');
    outcome.summary = {{"kind", to_string(spec.kind)},
                       {"spec", spec_to_json(spec)},
                       {"results", results},
                       {"warnings", outcome.warnings}};
    const fs::path summary_file = spec.out_dir / (kind_name + "_summary.json");
    write_json(summary_file, outcome.summary);
    outcome.files.push_back(summary_file);
    return outcome;
}

} // namespace qbat
