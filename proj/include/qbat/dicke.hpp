// dicke.hpp - Collective spin operators on the J = N/2 Dicke ladder, the
// 2^N product-space oracle, and resonance-avoidance margins.
//
// Dicke basis ordering: index 0 is M = N/2, index N is M = -N/2 (M descending).
// Half-integers are carried as twice their value (two_m) so range checks stay
// exact.
//
// Product-space ordering: qubit 0 is the most significant bit, and each qubit
// uses the local basis (|1>, |0>), so bit value 0 means "excited". The
// all-excited string therefore sits at index 0, consistent with M descending.

#pragma once

#include "qbat/matrix.hpp"
#include "qbat/params.hpp"

#include <array>
#include <string_view>

namespace qbat {

struct DickeIndex {
    int n{3};
    int two_m{1};

    // Requires n odd, n >= 3, |two_m| <= n and two_m with the parity of n.
    static DickeIndex make(int n, int two_m);

    double m() const { return 0.5 * two_m; }
    Index basis_index() const { return (n - two_m) / 2; }
};

inline Index dicke_basis_index(int n, int two_m) { return (n - two_m) / 2; }

enum class CollectiveKind { Jz, Jplus, Jminus, Jx, Jplus1, Jminus1, Jplus2, Jminus2 };

inline constexpr std::array<CollectiveKind, 8> kAllCollectiveKinds{
    CollectiveKind::Jz,     CollectiveKind::Jplus,   CollectiveKind::Jminus,
    CollectiveKind::Jx,     CollectiveKind::Jplus1,  CollectiveKind::Jminus1,
    CollectiveKind::Jplus2, CollectiveKind::Jminus2};

std::string_view to_string(CollectiveKind kind);

// a_M = (N/2 + M)(N/2 - M + 1), the squared matrix element <M|J+|M-1>.
// Valid for M in {-N/2 + 1, ..., N/2}.
double ladder_coeff(int n, int two_m);

// (N+1)x(N+1) operator on the Dicke ladder. Accepts any n >= 1; the J_{+1} /
// J_{+2} split puts transitions into M >= 3/2 in J_{+1} and the rest in J_{+2}.
ComplexMatrix collective_operator(int n, CollectiveKind kind);

// Same operator on the full 2^n space, built from single-qubit embeddings.
// n <= 9.
ComplexMatrix full_space_operator(int n, CollectiveKind kind);

// Normalized symmetric superposition over all strings with n/2 + M excitations.
StateVector dicke_state_full(int n, int two_m);

// 2^n x (n+1) isometry whose column k is the Dicke state with index k.
ComplexMatrix symmetric_isometry(int n);

inline constexpr int kMaxFullSpaceQubits = 9;

struct ResonanceMargins {
    std::array<double, 4> mu{};
    std::array<double, 4> margins{};

    double min_margin() const;
};

ResonanceMargins resonance_margins(const ModelParams& params);

} // namespace qbat
