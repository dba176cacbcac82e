// matrix.cpp - Dense complex linear algebra helpers

#include "qbat/matrix.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace qbat {

StateVector::StateVector(std::vector<Index> d, ComplexVector amps)
    : dims(std::move(d)), amplitudes(std::move(amps)) {
    const Index product = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
    if (dims.empty() || product != amplitudes.size()) {
        throw InvalidArgument("StateVector: product of dims does not match amplitude count");
    }
}

void DensityMatrix::validate(double tol) const {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw InvalidArgument("DensityMatrix: not square");
    }
    if (!is_hermitian(entries, tol)) {
        throw InvalidArgument("DensityMatrix: not Hermitian");
    }
    if (std::abs(entries.trace() - Complex{1.0, 0.0}) > tol) {
        throw InvalidArgument("DensityMatrix: trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw InvalidArgument("DensityMatrix: negative eigenvalue");
    }
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& h, double rel_tol) {
    if (h.rows() != h.cols()) {
        return false;
    }
    const double scale = max_abs(h);
    if (scale == 0.0) {
        return true;
    }
    return max_abs(h - h.adjoint()) <= rel_tol * scale;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix identity(Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

Eigensystem eig_hermitian(const ComplexMatrix& h) {
    if (!is_hermitian(h)) {
        throw InvalidArgument("eig_hermitian: matrix is not Hermitian");
    }
    const Index n = h.rows();
    // Symmetrize so round-off in the lower triangle cannot leak in.
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_hermitian: eigensolver did not converge");
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) {
        return solver.eigenvalues()(l) < solver.eigenvalues()(r);
    });

    Eigensystem es;
    es.values.resize(n);
    es.vectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        es.values(k) = solver.eigenvalues()(src);
        ComplexVector v = solver.eigenvectors().col(src);
        Index pivot = 0;
        double best = -1.0;
        for (Index i = 0; i < n; ++i) {
            // first index wins among equal magnitudes
            if (std::abs(v(i)) > best * (1.0 + 1e-12)) {
                best = std::abs(v(i));
                pivot = i;
            }
        }
        if (best > 0.0) {
            v *= std::conj(v(pivot)) / best;
            v(pivot) = Complex{best, 0.0};
        }
        es.vectors.col(k) = v;
    }
    return es;
}

ComplexMatrix propagator(const Eigensystem& es, double t) {
    ComplexVector phases(es.values.size());
    for (Index k = 0; k < es.values.size(); ++k) {
        phases(k) = std::polar(1.0, -es.values(k) * t);
    }
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
    return propagator(eig_hermitian(h), t);
}

DensityMatrix reduce_to_battery(const StateVector& psi) {
    if (psi.dims.size() != 2) {
        throw InvalidArgument("reduce_to_battery: expected two subsystems {charger, battery}");
    }
    const Index dc = psi.dims[0];
    const Index db = psi.dims[1];
    // Row-major (charger-slow) reshaping: column c of the map is the battery
    // amplitude vector paired with charger state c.
    const Eigen::Map<const ComplexMatrix> blocks(psi.amplitudes.data(), db, dc);
    DensityMatrix rho;
    rho.entries = blocks * blocks.adjoint();
    return rho;
}

} // namespace qbat
