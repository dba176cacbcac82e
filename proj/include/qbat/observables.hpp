// observables.hpp - Ergotropy, charging time, leakage, perturbative validity
// diagnostics and log-log scaling fits.

#pragma once

#include "qbat/dicke.hpp"
#include "qbat/dynamics.hpp"
#include "qbat/matrix.hpp"
#include "qbat/params.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qbat {

// Tr[H rho] minus the passive-state energy: rho's eigenvalues sorted
// descending paired with H's eigenvalues sorted ascending.
double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h_battery);

// Ergotropy of the fully charged |01>_B, epsilon2.
double max_stored_ergotropy(const ModelParams& p);

void fill_ergotropy(TimeSeries& series, const ComplexMatrix& h_battery);

// Which "maximum ergotropy" the charging threshold is measured against.
enum class ErgotropyReference { Analytic, TrajectoryMax };

struct ChargingResult {
    int n{0};
    std::optional<double> tau; // empty when the threshold is never reached
    double peak_ergotropy{0.0};
    double max_ergotropy_ref{0.0};
    double leakage{0.0};

    bool achieved() const { return tau.has_value(); }
};

// Throws InvalidArgument when the initial |10>_B ergotropy epsilon1 already
// meets fraction * epsilon2, which would make the charging time meaningless.
void check_charging_threshold(const ModelParams& p, double fraction);

ChargingResult charging_time(const TimeSeries& series, const ModelParams& p, double fraction = 0.8,
                             ErgotropyReference reference = ErgotropyReference::Analytic);

// Closed-form charging time under the effective Hamiltonian, where
// p01 = sin^2(lambda t) and p10 = cos^2(lambda t).
double effective_charging_time(const ModelParams& p, double fraction = 0.8);

// max over samples of 1 - p01 - p10
double leakage(const TimeSeries& series);

struct ValidityReport {
    double r1{0.0}; // g N / delta
    double r2{0.0}; // delta / omega_a
    double r3{0.0}; // omega_a / |omega|
    double amp_max{0.0};
    std::array<double, 4> family_max{}; // per off-resonant family
    double t_char{0.0};
    double coupling_time{0.0};  // g N t_char
    double detuning_time{0.0};  // delta t_char
    ResonanceMargins margins;
    bool exact_resonance{false};
    std::vector<std::string> flags;

    bool ok() const { return flags.empty(); }
};

inline constexpr double kRatioFlagThreshold = 0.2;
inline constexpr double kAmplitudeFlagThreshold = 0.2;
inline constexpr double kCouplingTimeFlagThreshold = 5.0;
inline constexpr double kMarginWarnThreshold = 0.05;

// t_char defaults to pi / (2 lambda).
ValidityReport validity_diagnostics(const ModelParams& p, std::optional<double> t_char = std::nullopt);

// Two readings of the breakdown qubit count: omega_a / delta at the given
// parameters, and the N solving 10 g N = omega_a.
struct BreakdownEstimate {
    double at_params{0.0};
    double solved{0.0};
};

BreakdownEstimate breakdown_estimate(const ModelParams& p);

struct ScalingFit {
    double slope{0.0};
    double intercept{0.0};
    double residual{0.0}; // RMS of the log-space residuals
    std::size_t used{0};
    std::size_t excluded{0}; // entries without a tau
};

// Least squares on (ln N, ln tau). Needs at least three achieved points.
ScalingFit scaling_fit(const std::vector<std::pair<double, std::optional<double>>>& points);

} // namespace qbat
