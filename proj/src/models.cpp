// models.cpp - Hamiltonian builders

#include "qbat/models.hpp"

#include "qbat/dicke.hpp"

#include <cmath>
#include <string>

namespace qbat {

namespace {

// Single battery qubit in the basis (|0>, |1>).
ComplexMatrix qubit_sigma_z() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

ComplexMatrix qubit_sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix qubit_sigma_x() {
    const ComplexMatrix sp = qubit_sigma_plus();
    return sp + sp.adjoint();
}

// sigma^(1) + sigma^(2) on the two battery qubits
ComplexMatrix battery_sum(const ComplexMatrix& single) {
    const ComplexMatrix id = identity(2);
    return kron(single, id) + kron(id, single);
}

} // namespace

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::Exact: return "exact";
    case ModelKind::Rwa: return "rwa";
    case ModelKind::Effective: return "effective";
    case ModelKind::Separable: return "separable";
    }
    return "unknown";
}

double charger_energy(const ModelParams& p, int two_m) {
    const double m = 0.5 * two_m;
    return p.omega_a * m + p.omega * m * m;
}

double charger_gap(const ModelParams& p, int two_m) {
    return p.omega_a + p.omega * (two_m - 1);
}

ComplexMatrix charger_hamiltonian(const ModelParams& p) {
    p.validate();
    ComplexMatrix h = ComplexMatrix::Zero(p.n + 1, p.n + 1);
    for (Index i = 0; i <= p.n; ++i) {
        h(i, i) = charger_energy(p, p.n - 2 * static_cast<int>(i));
    }
    return h;
}

ComplexMatrix battery_hamiltonian(const ModelParams& p) {
    p.validate();
    const ComplexMatrix sz = qubit_sigma_z();
    const ComplexMatrix id = identity(2);
    return 0.5 * p.epsilon1() * kron(sz, id) + 0.5 * p.epsilon2() * kron(id, sz);
}

ComplexMatrix interaction_exact(const ModelParams& p) {
    p.validate();
    return 2.0 * p.g * kron(collective_operator(p.n, CollectiveKind::Jx), battery_sum(qubit_sigma_x()));
}

ComplexMatrix interaction_rwa(const ModelParams& p) {
    p.validate();
    const ComplexMatrix charger_part = collective_operator(p.n, CollectiveKind::Jplus1) +
                                       collective_operator(p.n, CollectiveKind::Jminus2);
    const ComplexMatrix a = kron(charger_part, battery_sum(qubit_sigma_plus()));
    return p.g * (a + a.adjoint());
}

double lambda_rate(const ModelParams& p) {
    p.validate();
    return p.g * p.g * std::sqrt(ladder_coeff(p.n, 1) * ladder_coeff(p.n, 3)) / p.delta;
}

ComplexMatrix effective_hamiltonian(const ModelParams& p) {
    const double lambda = lambda_rate(p);
    const Index dim = 4 * (p.n + 1);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const Index from = dicke_basis_index(p.n, -1) * 4 + kB10;
    const Index to = dicke_basis_index(p.n, 3) * 4 + kB01;
    h(to, from) = lambda;
    h(from, to) = lambda;
    return h;
}

BuiltModel build_model(const ModelParams& p, ModelKind kind) {
    p.validate();
    BuiltModel model;
    model.kind = kind;
    model.dims = {p.n + 1, 4};
    model.h_battery = battery_hamiltonian(p);
    switch (kind) {
    case ModelKind::Exact:
    case ModelKind::Rwa: {
        const ComplexMatrix h0 =
            kron(charger_hamiltonian(p), identity(4)) + kron(identity(p.n + 1), model.h_battery);
        model.h_total = h0 + (kind == ModelKind::Exact ? interaction_exact(p) : interaction_rwa(p));
        break;
    }
    case ModelKind::Effective:
        model.h_total = effective_hamiltonian(p);
        break;
    case ModelKind::Separable:
        throw InvalidArgument("build_model: use separable_model_hamiltonian for the separable baseline");
    }
    return model;
}

BuiltModel separable_model_hamiltonian(int n, double g, double omega_a) {
    if (n < 1) {
        throw InvalidArgument("separable model needs n >= 1");
    }
    const ComplexMatrix jz = collective_operator(n, CollectiveKind::Jz);
    const ComplexMatrix jp = collective_operator(n, CollectiveKind::Jplus);
    const ComplexMatrix sp = qubit_sigma_plus();

    BuiltModel model;
    model.kind = ModelKind::Separable;
    model.dims = {n + 1, 2};
    model.h_battery = 0.5 * omega_a * qubit_sigma_z();
    model.h_total = omega_a * kron(jz, identity(2)) + kron(identity(n + 1), model.h_battery) +
                    g * (kron(jp.adjoint(), sp) + kron(jp, sp.adjoint()));
    return model;
}

StateVector separable_initial_state(int n) {
    if (n < 1) {
        throw InvalidArgument("separable model needs n >= 1");
    }
    ComplexVector amps = ComplexVector::Zero(2 * (n + 1));
    amps(0) = 1.0; // |N/2>_C |0>_B
    return StateVector({n + 1, 2}, std::move(amps));
}

StateVector initial_state(const ModelParams& p, ModelKind kind) {
    switch (kind) {
    case ModelKind::Separable:
        return separable_initial_state(p.n);
    case ModelKind::Exact:
    case ModelKind::Rwa:
    case ModelKind::Effective: {
        p.validate();
        ComplexVector amps = ComplexVector::Zero(4 * (p.n + 1));
        amps(dicke_basis_index(p.n, -1) * 4 + kB10) = 1.0;
        return StateVector({p.n + 1, 4}, std::move(amps));
    }
    }
    throw InvalidArgument("initial_state: unknown model kind");
}

double baseline_single_population(double g, double t) {
    if (g <= 0.0 || t < 0.0) {
        throw InvalidArgument("baseline_single_population: need g > 0 and t >= 0");
    }
    const double s = std::sin(g * t);
    return s * s;
}

double baseline_separable_population(int n, double g, double t) {
    if (n < 1 || g <= 0.0 || t < 0.0) {
        throw InvalidArgument("baseline_separable_population: need n >= 1, g > 0, t >= 0");
    }
    const double s = std::sin(std::sqrt(static_cast<double>(n)) * g * t);
    return s * s;
}

} // namespace qbat
