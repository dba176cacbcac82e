// models.hpp - Hamiltonian builders for the superabsorbing charger, its RWA
// and effective reductions, and the separable baseline; initial states and
// closed-form baseline populations.
//
// Composite ordering is charger-slow: |M>_C (x) |b1 b2>_B with battery basis
// |00>, |01>, |10>, |11> (b1 is the slow bit, 1 = excited).

#pragma once

#include "qbat/matrix.hpp"
#include "qbat/params.hpp"

#include <array>
#include <string_view>

namespace qbat {

enum class ModelKind { Exact, Rwa, Effective, Separable };

std::string_view to_string(ModelKind kind);

// Battery basis positions in the 4-dim two-qubit space.
enum BatteryLevel : Index { kB00 = 0, kB01 = 1, kB10 = 2, kB11 = 3 };

struct BuiltModel {
    ComplexMatrix h_total;
    ComplexMatrix h_battery; // free battery Hamiltonian, used for ergotropy
    std::array<Index, 2> dims{}; // {charger, battery}
    ModelKind kind{ModelKind::Exact};

    Index dim() const { return dims[0] * dims[1]; }
};

// E_M = omega_a M + omega M^2
double charger_energy(const ModelParams& p, int two_m);
// Delta_M = E_M - E_{M-1} = omega_a + omega (2M - 1)
double charger_gap(const ModelParams& p, int two_m);

ComplexMatrix charger_hamiltonian(const ModelParams& p);
ComplexMatrix battery_hamiltonian(const ModelParams& p);

// 2g (sigma_x^(1) + sigma_x^(2)) (x) J_x, no rotating-wave approximation
ComplexMatrix interaction_exact(const ModelParams& p);
// g (A + A^dagger), A = (sigma_+^(1) + sigma_+^(2)) (J_{+1} + J_{-2})
ComplexMatrix interaction_rwa(const ModelParams& p);

// lambda = g^2 sqrt(a_{1/2} a_{3/2}) / delta
double lambda_rate(const ModelParams& p);

// lambda (L+ + L-) coupling |-1/2>|10> <-> |3/2>|01>, materialized on the
// full 4(N+1) space.
ComplexMatrix effective_hamiltonian(const ModelParams& p);

// Exact, Rwa or Effective. Separable has its own builder below.
BuiltModel build_model(const ModelParams& p, ModelKind kind);

// Separable baseline on (N+1) x 2: H = omega_a J_z + (omega_a/2) sigma_z
// + g (J_- sigma_+ + J_+ sigma_-); battery basis |0>, |1>.
BuiltModel separable_model_hamiltonian(int n, double g, double omega_a);

// Superabsorption kinds start in |-1/2>_C |10>_B. Separable only reads p.n
// and returns separable_initial_state(p.n).
StateVector initial_state(const ModelParams& p, ModelKind kind);
// Separable baseline starts with all chargers excited, battery in |0>.
StateVector separable_initial_state(int n);

// sin^2(g t): single three-level charger, battery excited population
double baseline_single_population(double g, double t);
// sin^2(sqrt(N) g t): N separable chargers
double baseline_separable_population(int n, double g, double t);

} // namespace qbat
