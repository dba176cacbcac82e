// dynamics.hpp - Spectral time evolution and battery population traces

#pragma once

#include "qbat/matrix.hpp"
#include "qbat/models.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qbat {

// Uniform grid on [0, t_end] with `samples` points.
struct TimeGrid {
    double t_end{1.0};
    Index samples{2};

    static TimeGrid make(double t_end, Index samples);

    double spacing() const { return t_end / static_cast<double>(samples - 1); }
    double at(Index k) const { return k == samples - 1 ? t_end : spacing() * static_cast<double>(k); }
};

struct TimeSeries {
    std::vector<double> times;
    // populations[level][sample]: diagonal of the reduced battery state
    std::vector<std::vector<double>> populations;
    std::vector<DensityMatrix> battery_states;
    std::vector<double> ergotropy; // filled by fill_ergotropy
    std::vector<StateVector> states; // only when retained

    std::size_t size() const { return times.size(); }
    Index battery_dim() const { return static_cast<Index>(populations.size()); }
    const std::vector<double>& channel(Index level) const;
};

struct EvolveOptions {
    bool retain_states{false};
};

// One eigendecomposition of the model Hamiltonian, then
// psi(t_k) = V diag(exp(-i lambda t_k)) V^dagger psi0 at every grid point.
TimeSeries evolve(const BuiltModel& model, const StateVector& psi0, const TimeGrid& grid,
                  EvolveOptions options = {});

// Same, reusing a precomputed eigensystem of a Hamiltonian on `dims`.
TimeSeries evolve(const Eigensystem& es, const std::array<Index, 2>& dims, const StateVector& psi0,
                  const TimeGrid& grid, EvolveOptions options = {});

// First sample index k with values[k] >= threshold, linearly interpolated
// against the previous sample. A series that starts at or above the
// threshold crosses at times[0].
std::optional<double> first_crossing(std::span<const double> times, std::span<const double> values,
                                     double threshold);

// Crossing of a battery population channel; threshold must lie in (0, 1).
std::optional<double> first_passage(const TimeSeries& series, Index channel, double threshold);

} // namespace qbat
