#include "qbat/dynamics.hpp"

#include "qbat/dicke.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qbat;

namespace {

constexpr double kPi = std::numbers::pi;

double sin2(double x) {
    const double s = std::sin(x);
    return s * s;
}

} // namespace

TEST(TimeGrid, Validation) {
    EXPECT_THROW(TimeGrid::make(0.0, 10), InvalidArgument);
    EXPECT_THROW(TimeGrid::make(1.0, 1), InvalidArgument);
    const TimeGrid g = TimeGrid::make(2.0, 5);
    EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
    EXPECT_DOUBLE_EQ(g.at(0), 0.0);
    EXPECT_DOUBLE_EQ(g.at(4), 2.0);
}

TEST(Evolve, DiagonalHamiltonianKeepsPopulations) {
    BuiltModel m;
    m.dims = {3, 4};
    m.h_total = ComplexMatrix::Zero(12, 12);
    for (Index i = 0; i < 12; ++i) m.h_total(i, i) = 0.37 * static_cast<double>(i) - 1.0;
    ComplexVector amps = ComplexVector::Zero(12);
    amps(1) = Complex(0.6, 0.0);
    amps(6) = Complex(0.0, 0.8);
    const TimeSeries s = evolve(m, StateVector({3, 4}, amps), TimeGrid::make(50.0, 101));
    ASSERT_EQ(s.size(), 101u);
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(s.populations[1][k], 0.36, 1e-12);
        EXPECT_NEAR(s.populations[2][k], 0.64, 1e-12);
        EXPECT_NEAR(s.populations[0][k], 0.0, 1e-12);
    }
}

TEST(Evolve, EffectiveModelFollowsRabiFormula) {
    const ModelParams p = ModelParams::paper_defaults(101);
    const double lambda = lambda_rate(p);
    const TimeSeries s =
        evolve(build_model(p, ModelKind::Effective), initial_state(p, ModelKind::Effective),
               TimeGrid::make(kPi / lambda, 2001));
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(s.channel(kB01)[k], sin2(lambda * s.times[k]), 1e-9);
        EXPECT_NEAR(s.channel(kB10)[k], 1.0 - sin2(lambda * s.times[k]), 1e-9);
    }
}

TEST(Evolve, SeparableModelFollowsClosedForm) {
    const double g = 1e-3;
    const TimeSeries s = evolve(separable_model_hamiltonian(9, g, 10.0), separable_initial_state(9),
                                TimeGrid::make(kPi / (3.0 * g), 1001));
    EXPECT_EQ(s.battery_dim(), 2);
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(s.channel(1)[k], sin2(3.0 * g * s.times[k]), 1e-9);
    }
}

TEST(Evolve, RetainedStatesStayNormalized) {
    const ModelParams p = ModelParams::paper_defaults(11);
    const TimeSeries s = evolve(build_model(p, ModelKind::Exact), initial_state(p, ModelKind::Exact),
                                TimeGrid::make(5000.0, 300), EvolveOptions{true});
    ASSERT_EQ(s.states.size(), 300u);
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(s.states[k].norm(), 1.0, 1e-10);
        double total = 0.0;
        for (Index b = 0; b < 4; ++b) {
            const double v = s.populations[static_cast<std::size_t>(b)][k];
            EXPECT_GE(v, -1e-10);
            EXPECT_LE(v, 1.0 + 1e-10);
            total += v;
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(Evolve, DimensionMismatch) {
    const ModelParams p = ModelParams::paper_defaults(11);
    const StateVector wrong = initial_state(ModelParams::paper_defaults(13), ModelKind::Exact);
    EXPECT_THROW(evolve(build_model(p, ModelKind::Exact), wrong, TimeGrid::make(1.0, 2)), InvalidArgument);
}

TEST(Evolve, MatchesFullSpaceOracleForThreeQubits) {
    const int n = 3;
    const ModelParams p = ModelParams::paper_defaults(n);
    const ComplexMatrix jz = full_space_operator(n, CollectiveKind::Jz);
    const ComplexMatrix hn = p.omega_a * jz + p.omega * jz * jz;
    ComplexMatrix sx = ComplexMatrix::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    const ComplexMatrix bsx = kron(sx, identity(2)) + kron(identity(2), sx);
    const Index dfull = Index{1} << n;
    BuiltModel full;
    full.dims = {dfull, 4};
    full.h_total = kron(hn, identity(4)) + kron(identity(dfull), battery_hamiltonian(p)) +
                   2.0 * p.g * kron(full_space_operator(n, CollectiveKind::Jx), bsx);
    ComplexVector battery = ComplexVector::Zero(4);
    battery(kB10) = 1.0;
    const StateVector psi_full({dfull, 4}, kron(dicke_state_full(n, -1).amplitudes, battery));

    const TimeGrid grid = TimeGrid::make(kPi / lambda_rate(p), 50);
    const TimeSeries a = evolve(full, psi_full, grid);
    const TimeSeries b = evolve(build_model(p, ModelKind::Exact), initial_state(p, ModelKind::Exact), grid);
    for (std::size_t k = 0; k < grid.samples; ++k) {
        EXPECT_LE(max_abs(a.battery_states[k].entries - b.battery_states[k].entries), 1e-8) << k;
    }
}

TEST(FirstPassage, RabiCurve) {
    const double lambda = 2.5e-3;
    const TimeGrid grid = TimeGrid::make(kPi / lambda, 4001);
    TimeSeries s;
    s.populations.assign(4, std::vector<double>(grid.samples, 0.0));
    for (Index k = 0; k < grid.samples; ++k) {
        s.times.push_back(grid.at(k));
        s.populations[kB01][static_cast<std::size_t>(k)] = sin2(lambda * grid.at(k));
    }
    const auto t80 = first_passage(s, kB01, 0.8);
    ASSERT_TRUE(t80);
    EXPECT_NEAR(*t80, std::asin(std::sqrt(0.8)) / lambda, grid.spacing());
    const auto t50 = first_passage(s, kB01, 0.5);
    ASSERT_TRUE(t50);
    EXPECT_NEAR(*t50, kPi / (4.0 * lambda), grid.spacing());
    EXPECT_FALSE(first_passage(s, kB00, 0.5));
    EXPECT_THROW(first_passage(s, kB01, 1.0), InvalidArgument);
    EXPECT_THROW(first_passage(s, kB01, 0.0), InvalidArgument);
}

TEST(FirstCrossing, LinearInterpolation) {
    const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> v{0.0, 0.2, 0.6, 0.1};
    EXPECT_DOUBLE_EQ(*first_crossing(t, v, 0.4), 1.5);
    EXPECT_DOUBLE_EQ(*first_crossing(t, v, 0.0), 0.0);
    EXPECT_FALSE(first_crossing(t, v, 0.7));
}

TEST(FirstPassage, StableUnderGridRefinement) {
    const ModelParams p = ModelParams::paper_defaults(21);
    const BuiltModel model = build_model(p, ModelKind::Exact);
    const Eigensystem es = eig_hermitian(model.h_total);
    const StateVector psi0 = initial_state(p, ModelKind::Exact);
    const double t_end = 1.2 * kPi / (2.0 * lambda_rate(p));
    const TimeGrid coarse = TimeGrid::make(t_end, 2001);
    const TimeGrid fine = TimeGrid::make(t_end, 4001);
    const auto tc = first_passage(evolve(es, model.dims, psi0, coarse), kB01, 0.8);
    const auto tf = first_passage(evolve(es, model.dims, psi0, fine), kB01, 0.8);
    ASSERT_TRUE(tc && tf);
    EXPECT_LT(std::abs(*tc - *tf), coarse.spacing());
}
