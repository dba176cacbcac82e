// observables.cpp - Ergotropy, charging time and validity diagnostics

#include "qbat/observables.hpp"

#include "qbat/models.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace qbat {

double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h_battery) {
    rho.validate();
    if (h_battery.rows() != rho.dim() || h_battery.cols() != rho.dim()) {
        throw InvalidArgument("ergotropy: Hamiltonian and state dimensions differ");
    }
    if (!is_hermitian(h_battery)) {
        throw InvalidArgument("ergotropy: Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rho_es(rho.entries, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> h_es(h_battery, Eigen::EigenvaluesOnly);
    // Both spectra come back ascending; pair the largest population with the
    // lowest energy.
    const RealVector& r = rho_es.eigenvalues();
    const RealVector& e = h_es.eigenvalues();
    const Index d = r.size();
    double passive = 0.0;
    for (Index k = 0; k < d; ++k) {
        passive += r(d - 1 - k) * e(k);
    }
    const double energy = (h_battery * rho.entries).trace().real();
    return energy - passive;
}

double max_stored_ergotropy(const ModelParams& p) {
    p.validate();
    return p.epsilon2();
}

void fill_ergotropy(TimeSeries& series, const ComplexMatrix& h_battery) {
    series.ergotropy.resize(series.battery_states.size());
    for (std::size_t k = 0; k < series.battery_states.size(); ++k) {
        series.ergotropy[k] = ergotropy(series.battery_states[k], h_battery);
    }
}

void check_charging_threshold(const ModelParams& p, double fraction) {
    p.validate();
    if (fraction * p.epsilon2() <= p.epsilon1()) {
        throw InvalidArgument("charging threshold " + std::to_string(fraction) +
                              " * epsilon2 does not exceed the initial ergotropy epsilon1");
    }
}

ChargingResult charging_time(const TimeSeries& series, const ModelParams& p, double fraction,
                             ErgotropyReference reference) {
    if (series.ergotropy.size() != series.times.size() || series.times.empty()) {
        throw InvalidArgument("charging_time: ergotropy not filled for this series");
    }
    if (fraction < 0.0 || fraction > 1.0) {
        throw InvalidArgument("charging_time: fraction must lie in [0, 1]");
    }
    ChargingResult result;
    result.n = p.n;
    result.peak_ergotropy = *std::max_element(series.ergotropy.begin(), series.ergotropy.end());
    result.max_ergotropy_ref =
        reference == ErgotropyReference::Analytic ? max_stored_ergotropy(p) : result.peak_ergotropy;
    result.tau = first_crossing(series.times, series.ergotropy, fraction * result.max_ergotropy_ref);
    result.leakage = series.battery_dim() == 4 ? leakage(series) : 0.0;
    return result;
}

double effective_charging_time(const ModelParams& p, double fraction) {
    if (fraction < 0.0 || fraction > 1.0) {
        throw InvalidArgument("effective_charging_time: fraction must lie in [0, 1]");
    }
    const double e1 = p.epsilon1();
    const double e2 = max_stored_ergotropy(p);
    const double target = fraction * e2;
    // Ergotropy of diag(p01 = x, p10 = 1 - x): linear from e1 to e2/2 on
    // x <= 1/2, then x * e2.
    double x = 0.0;
    if (target <= e1) {
        x = 0.0;
    } else if (target <= 0.5 * e2 && e2 > 2.0 * e1) {
        x = (target - e1) / (e2 - 2.0 * e1);
    } else {
        x = fraction;
    }
    return std::asin(std::sqrt(x)) / lambda_rate(p);
}

double leakage(const TimeSeries& series) {
    if (series.battery_dim() != 4) {
        throw InvalidArgument("leakage: needs the two-qubit battery");
    }
    const auto& p01 = series.channel(kB01);
    const auto& p10 = series.channel(kB10);
    double worst = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        worst = std::max(worst, 1.0 - p01[k] - p10[k]);
    }
    return worst;
}

ValidityReport validity_diagnostics(const ModelParams& p, std::optional<double> t_char) {
    p.validate();
    ValidityReport rep;
    const double gn = p.g * p.n;
    const double abs_om = std::abs(p.omega);
    rep.r1 = gn / p.delta;
    rep.r2 = p.delta / p.omega_a;
    rep.r3 = p.omega_a / abs_om;
    rep.t_char = t_char.value_or(std::numbers::pi / (2.0 * lambda_rate(p)));
    if (!(rep.t_char > 0.0)) {
        throw InvalidArgument("validity_diagnostics: t_char must be positive");
    }
    rep.coupling_time = gn * rep.t_char;
    rep.detuning_time = p.delta * rep.t_char;
    rep.margins = resonance_margins(p);

    // First-order amplitudes g sqrt(a_M) / |detuning| of the four transition
    // families: raising into M >= 3/2 (families 0, 2) and lowering out of
    // M <= 1/2 (families 1, 3), against qubit 1 and qubit 2 respectively.
    const double q1 = p.omega_a + p.delta;
    const double q2 = std::abs(p.omega_a + 2.0 * p.omega) + p.delta;
    const double scale = p.omega_a + abs_om * (p.n + 1) + p.delta;
    auto family = [&](std::size_t idx, int lo, int hi, double freq, double sign) {
        double worst = 0.0;
        for (int two_m = lo; two_m <= hi; two_m += 2) {
            const double a = ladder_coeff(p.n, two_m);
            if (a == 0.0) {
                continue;
            }
            const double den = freq + sign * charger_gap(p, two_m);
            if (std::abs(den) <= 1e-12 * scale) {
                rep.exact_resonance = true;
                continue;
            }
            worst = std::max(worst, p.g * std::sqrt(a) / std::abs(den));
        }
        rep.family_max[idx] = worst;
    };
    family(0, 3, p.n, q1, +1.0);
    family(1, 2 - p.n, 1, q1, -1.0);
    family(2, 3, p.n, q2, +1.0);
    family(3, 2 - p.n, 1, q2, -1.0);
    rep.amp_max = *std::max_element(rep.family_max.begin(), rep.family_max.end());

    if (rep.r1 >= kRatioFlagThreshold) rep.flags.emplace_back("coupling_vs_detuning");
    if (rep.r2 >= kRatioFlagThreshold) rep.flags.emplace_back("detuning_vs_frequency");
    if (rep.r3 >= 1.0) rep.flags.emplace_back("frequency_vs_collective");
    if (rep.amp_max >= kAmplitudeFlagThreshold) rep.flags.emplace_back("off_resonant_amplitude");
    if (rep.coupling_time <= kCouplingTimeFlagThreshold) rep.flags.emplace_back("short_time");
    if (rep.margins.min_margin() < kMarginWarnThreshold) rep.flags.emplace_back("resonance_margin");
    if (rep.exact_resonance) rep.flags.emplace_back("exact_resonance");
    return rep;
}

BreakdownEstimate breakdown_estimate(const ModelParams& p) {
    p.validate();
    return BreakdownEstimate{p.omega_a / p.delta, p.omega_a / (10.0 * p.g)};
}

ScalingFit scaling_fit(const std::vector<std::pair<double, std::optional<double>>>& points) {
    ScalingFit fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [n, tau] : points) {
        if (!tau) {
            ++fit.excluded;
            continue;
        }
        if (!(n > 0.0) || !(*tau > 0.0)) {
            throw InvalidArgument("scaling_fit: N and tau must be positive");
        }
        xs.push_back(std::log(n));
        ys.push_back(std::log(*tau));
    }
    fit.used = xs.size();
    if (fit.used < 3) {
        throw InvalidArgument("scaling_fit: need at least 3 achieved points");
    }
    const double count = static_cast<double>(fit.used);
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw InvalidArgument("scaling_fit: all N values coincide");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    return fit;
}

} // namespace qbat
