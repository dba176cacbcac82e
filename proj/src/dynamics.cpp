// dynamics.cpp - Spectral propagation over a time grid

#include "qbat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbat {

namespace {

constexpr Index kSampleBlock = 256;

} // namespace

TimeGrid TimeGrid::make(double t_end, Index samples) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw InvalidArgument("TimeGrid: t_end must be positive and finite");
    }
    if (samples < 2) {
        throw InvalidArgument("TimeGrid: need at least 2 samples");
    }
    return TimeGrid{t_end, samples};
}

const std::vector<double>& TimeSeries::channel(Index level) const {
    if (level < 0 || level >= battery_dim()) {
        throw InvalidArgument("TimeSeries: channel " + std::to_string(level) + " out of range");
    }
    return populations[static_cast<std::size_t>(level)];
}

TimeSeries evolve(const Eigensystem& es, const std::array<Index, 2>& dims, const StateVector& psi0,
                  const TimeGrid& grid, EvolveOptions options) {
    const Index dim = dims[0] * dims[1];
    if (psi0.dims.size() != 2 || psi0.dims[0] != dims[0] || psi0.dims[1] != dims[1]) {
        throw InvalidArgument("evolve: initial state dims do not match the model");
    }
    if (es.values.size() != dim) {
        throw InvalidArgument("evolve: eigensystem dimension does not match the model");
    }
    const TimeGrid checked = TimeGrid::make(grid.t_end, grid.samples);

    const ComplexVector coeffs = es.vectors.adjoint() * psi0.amplitudes;
    const Index db = dims[1];
    const auto n_samples = static_cast<std::size_t>(checked.samples);

    TimeSeries series;
    series.times.reserve(n_samples);
    series.populations.assign(static_cast<std::size_t>(db), std::vector<double>(n_samples));
    series.battery_states.reserve(n_samples);
    if (options.retain_states) {
        series.states.reserve(n_samples);
    }

    // Blocks of samples turn the per-sample matrix-vector products into one
    // matrix-matrix product.
    ComplexMatrix phased(dim, kSampleBlock);
    ComplexMatrix psi_block(dim, kSampleBlock);
    for (Index start = 0; start < checked.samples; start += kSampleBlock) {
        const Index count = std::min(kSampleBlock, checked.samples - start);
        for (Index s = 0; s < count; ++s) {
            const double t = checked.at(start + s);
            for (Index j = 0; j < dim; ++j) {
                phased(j, s) = std::polar(1.0, -es.values(j) * t) * coeffs(j);
            }
        }
        psi_block.leftCols(count).noalias() = es.vectors * phased.leftCols(count);

        for (Index s = 0; s < count; ++s) {
            const auto k = static_cast<std::size_t>(start + s);
            series.times.push_back(checked.at(start + s));
            StateVector psi;
            psi.dims = psi0.dims;
            psi.amplitudes = psi_block.col(s);
            DensityMatrix rho = reduce_to_battery(psi);
            for (Index b = 0; b < db; ++b) {
                series.populations[static_cast<std::size_t>(b)][k] = rho.entries(b, b).real();
            }
            series.battery_states.push_back(std::move(rho));
            if (options.retain_states) {
                series.states.push_back(std::move(psi));
            }
        }
    }
    return series;
}

TimeSeries evolve(const BuiltModel& model, const StateVector& psi0, const TimeGrid& grid,
                  EvolveOptions options) {
    if (psi0.size() != model.dim()) {
        throw InvalidArgument("evolve: initial state dimension does not match the model");
    }
    return evolve(eig_hermitian(model.h_total), model.dims, psi0, grid, options);
}

std::optional<double> first_crossing(std::span<const double> times, std::span<const double> values,
                                     double threshold) {
    if (times.size() != values.size()) {
        throw InvalidArgument("first_crossing: times and values differ in length");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < threshold) {
            continue;
        }
        if (k == 0) {
            return times[0];
        }
        const double v0 = values[k - 1];
        const double v1 = values[k];
        const double frac = (threshold - v0) / (v1 - v0);
        return times[k - 1] + frac * (times[k] - times[k - 1]);
    }
    return std::nullopt;
}

std::optional<double> first_passage(const TimeSeries& series, Index channel, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InvalidArgument("first_passage: threshold must lie in (0, 1)");
    }
    return first_crossing(series.times, series.channel(channel), threshold);
}

} // namespace qbat
