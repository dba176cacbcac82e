// matrix.hpp - Dense complex linear algebra: Kronecker products, Hermitian
// eigensystems, spectral propagators and the battery partial trace.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Raised for inputs that violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical routine fails (eigensolver non-convergence, exact
// resonance in a denominator that cannot be reported otherwise, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wavefunction on a tensor-product space. dims lists the subsystem
// dimensions with the slowest index first (charger, then battery).
struct StateVector {
    std::vector<Index> dims;
    ComplexVector amplitudes;

    StateVector() = default;
    StateVector(std::vector<Index> d, ComplexVector amps);

    Index size() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

// Reduced state of a subsystem. Validity (Hermitian, unit trace, PSD) is
// checked on demand via validate().
struct DensityMatrix {
    ComplexMatrix entries;

    Index dim() const { return entries.rows(); }
    Complex trace() const { return entries.trace(); }
    void validate(double tol = 1e-10) const;
};

struct Eigensystem {
    RealVector values;     // ascending
    ComplexMatrix vectors; // orthonormal columns, largest component real positive
};

// max_ij |H_ij - conj(H_ji)| <= rel_tol * max|H|
bool is_hermitian(const ComplexMatrix& h, double rel_tol = 1e-12);

double max_abs(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity(Index dim);

Eigensystem eig_hermitian(const ComplexMatrix& h);

ComplexMatrix propagator(const ComplexMatrix& h, double t);
ComplexMatrix propagator(const Eigensystem& es, double t);

// Partial trace over the charger: psi.dims must be {d_C, d_B}.
DensityMatrix reduce_to_battery(const StateVector& psi);

} // namespace qbat
