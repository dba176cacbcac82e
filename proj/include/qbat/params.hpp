// params.hpp - Physical parameter tuple for the superabsorbing charger model

#pragma once

#include <string>

namespace qbat {

// hbar = 1; every energy shares the unit of omega_a, times are inverse energies.
struct ModelParams {
    int n{101};           // charger qubits (odd, >= 3)
    double omega_a{10.0}; // single-qubit frequency
    double omega{-23.0};  // collective J_z^2 coupling (negative, |omega| > omega_a)
    double g{1e-3};       // charger-battery coupling
    double delta{1.01};   // battery detuning from the Lambda transitions

    // g = 1e-3, omega_a = 10, omega = -2.3 omega_a, delta = 10 g n
    static ModelParams paper_defaults(int n = 101);

    // qubit 1 and qubit 2 battery splittings
    double epsilon1() const { return omega_a + delta; }
    double epsilon2() const;

    // Throws InvalidArgument when an invariant fails.
    void validate() const;
};

std::string describe(const ModelParams& p);

} // namespace qbat
