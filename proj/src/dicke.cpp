// dicke.cpp - Collective operators and the product-space oracle

#include "qbat/dicke.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace qbat {

namespace {

void require_ladder(int n) {
    if (n < 1) {
        throw InvalidArgument("collective operators need n >= 1, got " + std::to_string(n));
    }
}

void require_full_space(int n) {
    if (n < 1 || n > kMaxFullSpaceQubits) {
        throw InvalidArgument("full-space oracle supports 1 <= n <= 9, got " + std::to_string(n));
    }
}

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

// 2*J_z of a product-space basis state: excited (bit 0) counts +1, ground -1.
int twice_jz(unsigned state, int n) {
    const int ground = std::popcount(state);
    return (n - ground) - ground;
}

} // namespace

DickeIndex DickeIndex::make(int n, int two_m) {
    if (n < 3 || n % 2 == 0) {
        throw InvalidArgument("DickeIndex: n must be odd and >= 3, got " + std::to_string(n));
    }
    if (std::abs(two_m) > n || !same_parity(two_m, n)) {
        throw InvalidArgument("DickeIndex: M = " + std::to_string(two_m) + "/2 not on the ladder");
    }
    return DickeIndex{n, two_m};
}

std::string_view to_string(CollectiveKind kind) {
    switch (kind) {
    case CollectiveKind::Jz: return "Jz";
    case CollectiveKind::Jplus: return "Jplus";
    case CollectiveKind::Jminus: return "Jminus";
    case CollectiveKind::Jx: return "Jx";
    case CollectiveKind::Jplus1: return "Jplus1";
    case CollectiveKind::Jminus1: return "Jminus1";
    case CollectiveKind::Jplus2: return "Jplus2";
    case CollectiveKind::Jminus2: return "Jminus2";
    }
    return "unknown";
}

double ladder_coeff(int n, int two_m) {
    if (n < 1 || !same_parity(two_m, n) || two_m > n || two_m < 2 - n) {
        throw InvalidArgument("ladder_coeff: M = " + std::to_string(two_m) +
                              "/2 outside {-N/2+1, ..., N/2} for N = " + std::to_string(n));
    }
    // (N/2 + M)(N/2 - M + 1) with both factors integral
    const long long up = (n + two_m) / 2;
    const long long down = (n - two_m) / 2 + 1;
    return static_cast<double>(up * down);
}

ComplexMatrix collective_operator(int n, CollectiveKind kind) {
    require_ladder(n);
    const Index dim = n + 1;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);

    if (kind == CollectiveKind::Jz) {
        for (Index i = 0; i < dim; ++i) {
            out(i, i) = 0.5 * static_cast<double>(n - 2 * i);
        }
        return out;
    }

    const bool want_upper = kind != CollectiveKind::Jplus2 && kind != CollectiveKind::Jminus2;
    const bool want_lower = kind != CollectiveKind::Jplus1 && kind != CollectiveKind::Jminus1;
    // Row i holds M = n/2 - i; J+ maps column i+1 (M-1) into row i (M).
    for (Index i = 0; i + 1 < dim; ++i) {
        const int two_m = n - 2 * static_cast<int>(i);
        const bool upper_part = two_m >= 3;
        if ((upper_part && !want_upper) || (!upper_part && !want_lower)) {
            continue;
        }
        out(i, i + 1) = std::sqrt(ladder_coeff(n, two_m));
    }

    switch (kind) {
    case CollectiveKind::Jplus:
    case CollectiveKind::Jplus1:
    case CollectiveKind::Jplus2:
        return out;
    case CollectiveKind::Jminus:
    case CollectiveKind::Jminus1:
    case CollectiveKind::Jminus2:
        return out.adjoint();
    case CollectiveKind::Jx:
        return 0.5 * (out + out.adjoint());
    case CollectiveKind::Jz:
        break;
    }
    return out;
}

ComplexMatrix full_space_operator(int n, CollectiveKind kind) {
    require_full_space(n);
    const unsigned dim = 1u << n;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);

    if (kind == CollectiveKind::Jz) {
        for (unsigned s = 0; s < dim; ++s) {
            out(s, s) = 0.5 * twice_jz(s, n);
        }
        return out;
    }

    // Raising part, optionally restricted by the source state's J_z:
    // J_{+1} takes sources with J_z >= 1/2, J_{+2} the rest.
    const bool want_upper = kind != CollectiveKind::Jplus2 && kind != CollectiveKind::Jminus2;
    const bool want_lower = kind != CollectiveKind::Jplus1 && kind != CollectiveKind::Jminus1;
    for (unsigned s = 0; s < dim; ++s) {
        const bool upper_part = twice_jz(s, n) >= 1;
        if ((upper_part && !want_upper) || (!upper_part && !want_lower)) {
            continue;
        }
        for (int q = 0; q < n; ++q) {
            const unsigned bit = 1u << (n - 1 - q);
            if (s & bit) { // qubit q in |0>: sigma_+ excites it
                out(s & ~bit, s) += 1.0;
            }
        }
    }

    switch (kind) {
    case CollectiveKind::Jminus:
    case CollectiveKind::Jminus1:
    case CollectiveKind::Jminus2:
        return out.adjoint();
    case CollectiveKind::Jx:
        return 0.5 * (out + out.adjoint());
    default:
        return out;
    }
}

StateVector dicke_state_full(int n, int two_m) {
    require_full_space(n);
    if (std::abs(two_m) > n || !same_parity(two_m, n)) {
        throw InvalidArgument("dicke_state_full: M = " + std::to_string(two_m) + "/2 not on the ladder");
    }
    const unsigned dim = 1u << n;
    const int excited = (n + two_m) / 2;
    ComplexVector amps = ComplexVector::Zero(dim);
    Index count = 0;
    for (unsigned s = 0; s < dim; ++s) {
        if (n - std::popcount(s) == excited) {
            amps(s) = 1.0;
            ++count;
        }
    }
    amps /= std::sqrt(static_cast<double>(count));
    return StateVector({static_cast<Index>(dim)}, std::move(amps));
}

ComplexMatrix symmetric_isometry(int n) {
    require_full_space(n);
    ComplexMatrix p(Index{1} << n, n + 1);
    for (int k = 0; k <= n; ++k) {
        p.col(k) = dicke_state_full(n, n - 2 * k).amplitudes;
    }
    return p;
}

double ResonanceMargins::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : margins) {
        m = std::min(m, v);
    }
    return m;
}

ResonanceMargins resonance_margins(const ModelParams& params) {
    params.validate();
    const double wa = params.omega_a;
    const double om = params.omega;
    const double abs_om = std::abs(om);
    const double d = params.delta;

    ResonanceMargins r;
    r.mu = {0.5 * ((2.0 * wa + d) / abs_om + 1.0),
            0.5 * (d / om + 1.0),
            0.5 * (d / abs_om + 3.0),
            0.5 * ((d - 2.0 * wa) / om - 1.0)};
    for (std::size_t i = 0; i < r.mu.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int two_m = -params.n; two_m <= params.n; two_m += 2) {
            best = std::min(best, std::abs(r.mu[i] - 0.5 * two_m));
        }
        r.margins[i] = best;
    }
    return r;
}

} // namespace qbat
