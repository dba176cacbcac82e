#include "qbat/matrix.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qbat;

namespace {

ComplexMatrix random_hermitian(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    ComplexMatrix a(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) a(i, j) = Complex(nd(rng), nd(rng));
    return 0.5 * (a + a.adjoint());
}

ComplexMatrix diag(std::initializer_list<double> d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    Index i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
}

} // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(kron(identity(2), identity(2)), identity(4));
}

TEST(Kron, DiagonalStructure) {
    EXPECT_EQ(kron(diag({1, -1}), identity(2)), diag({1, 1, -1, -1}));
}

TEST(Kron, IndexArithmetic) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0; // |0><1|
    b(1, 0) = 1.0; // |1><0|
    const ComplexMatrix k = kron(a, b);
    // row 0*2+1 = 1, col 1*2+0 = 2
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(1, 2) = 1.0;
    EXPECT_EQ(k, expected);
}

TEST(Kron, AssociativeOnIntegerMatrices) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> ud(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        auto rnd = [&](Index r, Index c) {
            ComplexMatrix m(r, c);
            for (Index i = 0; i < r; ++i)
                for (Index j = 0; j < c; ++j) m(i, j) = Complex(ud(rng), ud(rng));
            return m;
        };
        const ComplexMatrix a = rnd(2, 3), b = rnd(3, 2), c = rnd(2, 2);
        EXPECT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));
    }
}

TEST(EigHermitian, DiagonalInput) {
    const Eigensystem es = eig_hermitian(diag({1, -1}));
    EXPECT_DOUBLE_EQ(es.values(0), -1.0);
    EXPECT_DOUBLE_EQ(es.values(1), 1.0);
}

TEST(EigHermitian, PauliX) {
    ComplexMatrix sx = ComplexMatrix::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    const Eigensystem es = eig_hermitian(sx);
    EXPECT_NEAR(es.values(0), -1.0, 1e-14);
    EXPECT_NEAR(es.values(1), 1.0, 1e-14);
    const double r = 1.0 / std::sqrt(2.0);
    // phase convention: largest component real positive, first index on ties
    EXPECT_NEAR(std::abs(es.vectors(0, 0) - Complex(r, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(es.vectors(1, 0) - Complex(-r, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(es.vectors(0, 1) - Complex(r, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(es.vectors(1, 1) - Complex(r, 0)), 0.0, 1e-14);
}

TEST(EigHermitian, RandomReconstruction) {
    std::mt19937_64 rng(42);
    const ComplexMatrix h = random_hermitian(50, rng);
    const Eigensystem es = eig_hermitian(h);
    const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
    const ComplexMatrix rebuilt = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LE(max_abs(h - rebuilt), 1e-10 * scale);
    EXPECT_LE(max_abs(es.vectors.adjoint() * es.vectors - identity(50)), 1e-10);
    for (Index k = 1; k < 50; ++k) EXPECT_LE(es.values(k - 1), es.values(k));
    for (Index k = 0; k < 50; ++k) {
        Index pivot;
        es.vectors.col(k).cwiseAbs().maxCoeff(&pivot);
        EXPECT_NEAR(es.vectors(pivot, k).imag(), 0.0, 1e-14);
        EXPECT_GT(es.vectors(pivot, k).real(), 0.0);
    }
}

TEST(EigHermitian, Deterministic) {
    std::mt19937_64 rng(3);
    const ComplexMatrix h = random_hermitian(20, rng);
    const Eigensystem a = eig_hermitian(h);
    const Eigensystem b = eig_hermitian(h);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.vectors, b.vectors);
}

TEST(EigHermitian, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(eig_hermitian(m), InvalidArgument);
    EXPECT_THROW(eig_hermitian(ComplexMatrix::Zero(2, 3)), InvalidArgument);
}

TEST(Propagator, ZeroTimeIsIdentity) {
    std::mt19937_64 rng(5);
    EXPECT_LE(max_abs(propagator(random_hermitian(8, rng), 0.0) - identity(8)), 1e-12);
}

TEST(Propagator, DiagonalAnalytic) {
    const double w = 1.7;
    const double t = 3.3;
    const ComplexMatrix u = propagator(diag({0.5 * w, -0.5 * w}), t);
    EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, -0.5 * w * t)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(u(1, 1) - std::polar(1.0, 0.5 * w * t)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(u(0, 1)), 0.0, 1e-13);
}

TEST(Propagator, UnitaryAndComposes) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = random_hermitian(12, rng);
        const Eigensystem es = eig_hermitian(h);
        const double t1 = ut(rng), t2 = ut(rng);
        const ComplexMatrix u1 = propagator(es, t1);
        EXPECT_LE(max_abs(u1.adjoint() * u1 - identity(12)), 1e-10);
        EXPECT_LE(max_abs(propagator(es, t1 + t2) - u1 * propagator(es, t2)), 1e-9);
    }
}

TEST(Propagator, ConservesEnergy) {
    std::mt19937_64 rng(13);
    const ComplexMatrix h = random_hermitian(16, rng);
    ComplexVector psi = ComplexVector::Random(16);
    psi.normalize();
    const double e0 = (psi.adjoint() * h * psi)(0).real();
    for (double t : {0.5, 7.0, 123.0}) {
        const ComplexVector pt = propagator(h, t) * psi;
        const double et = (pt.adjoint() * h * pt)(0).real();
        EXPECT_NEAR(et, e0, 1e-9 * std::max(1.0, std::abs(e0)));
    }
}

TEST(ReduceToBattery, ProductState) {
    ComplexVector chi(3);
    chi << Complex(0.6, 0), Complex(0, 0.8), Complex(0, 0);
    ComplexVector b = ComplexVector::Zero(4);
    b(2) = 1.0; // |10>
    const StateVector psi({3, 4}, kron(chi, b));
    const DensityMatrix rho = reduce_to_battery(psi);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(2, 2) = 1.0;
    EXPECT_LE(max_abs(rho.entries - expected), 1e-14);
}

TEST(ReduceToBattery, BellTypeSum) {
    ComplexVector amps = ComplexVector::Zero(8);
    amps(0 * 4 + 0) = 1.0 / std::sqrt(2.0); // |0>_C |00>_B
    amps(1 * 4 + 3) = 1.0 / std::sqrt(2.0); // |1>_C |11>_B
    const DensityMatrix rho = reduce_to_battery(StateVector({2, 4}, amps));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    EXPECT_LE(max_abs(rho.entries - expected), 1e-15);
}

TEST(ReduceToBattery, RandomStatesHaveUnitTraceAndArePositive) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 50; ++trial) {
        ComplexVector amps(6 * 4);
        for (Index i = 0; i < amps.size(); ++i) amps(i) = Complex(nd(rng), nd(rng));
        amps.normalize();
        const DensityMatrix rho = reduce_to_battery(StateVector({6, 4}, amps));
        EXPECT_NEAR(std::abs(rho.trace() - Complex(1.0, 0.0)), 0.0, 1e-10);
        EXPECT_NO_THROW(rho.validate());
    }
}

TEST(ReduceToBattery, DimsMismatch) {
    EXPECT_THROW(StateVector({3, 4}, ComplexVector::Zero(10)), InvalidArgument);
    const StateVector flat({12}, ComplexVector::Zero(12));
    EXPECT_THROW(reduce_to_battery(flat), InvalidArgument);
}
