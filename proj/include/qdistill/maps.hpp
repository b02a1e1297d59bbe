// maps.hpp — Linear maps on operators, the Jamiolkowski correspondence,
// maps built from Schmidt rank-2 vectors, the named detection maps, and
// k-positivity testing.
//
// Conventions, fixed once here and used everywhere:
//   * A map L acts as A ↦ Σ_i V_i A V_i†, or A ↦ Σ_i V_i Aᵀ V_i† when the
//     pre_transpose flag is set.
//   * Jamiolkowski operator: D = d (1 ⊗ L)(P+), and the inverse direction is
//     L(X) = Tr_A[ D (Xᵀ ⊗ 1) ].  The two are mutually inverse with no extra
//     scalar; the factor d lives inside D (e.g. the identity map has D = dP+,
//     trace d).
//   * For a unit vector psi, the map built from it satisfies
//     jamiolkowski_operator(map) = |psi><psi|^{T_B} exactly — the witness of
//     witness_from_vector.  Witness traces relate to map evaluations by
//     Tr(D rho) = d * Tr[(1 ⊗ adjoint(L))(rho) P+].

#pragma once

#include <string>
#include <vector>

#include "qdistill/core.hpp"
#include "qdistill/search.hpp"
#include "qdistill/states.hpp"

namespace qdistill {

// Kraus-style representation.  All Kraus operators share one shape
// (out_dim x in_dim).
struct LinearMapRep {
    std::vector<Mat> kraus;
    bool pre_transpose = false;

    int in_dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].cols()); }
    int out_dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }
};

enum class ExtendSide { Left, Right };  // Left: L ⊗ 1,  Right: 1 ⊗ L

// Detection witness D together with its provenance: either the rank-2
// vectors whose partial-transposed projectors sum to D, or the tag of a
// named closed form.
struct Witness {
    BipartiteOperator op;
    std::vector<PureVector> vectors;
    std::string form_tag;  // empty unless built from a named closed form
};

enum class NamedMapTag { Lambda1, Lambda2, Lambda3, Lambda4, Lambda5 };

const char* named_map_name(NamedMapTag t);

struct NamedMap {
    LinearMapRep map;
    Witness witness;
};

// ----------------------------- map application -----------------------------

Mat apply_map(const LinearMapRep& l, const Mat& x);

// (1 ⊗ L)(rho) or (L ⊗ 1)(rho); the acted-on factor must match in_dim.
BipartiteOperator apply_extended(const LinearMapRep& l,
                                 const BipartiteOperator& rho, ExtendSide side);

// D = d (1 ⊗ L)(P+); d must equal in_dim.  Output dims are (d, out_dim).
BipartiteOperator jamiolkowski_operator(const LinearMapRep& l, int d);

// Map action recovered from an operator: X ↦ Tr_A[ D (Xᵀ ⊗ 1) ].
struct OperatorMap {
    BipartiteOperator d_op;
    Mat apply(const Mat& x) const;
    int in_dim() const { return d_op.dim_a; }
    int out_dim() const { return d_op.dim_b; }
};

OperatorMap map_from_operator(const BipartiteOperator& d_op);

// Adjoint with respect to Tr(A L(B)) = Tr(adjoint(L)(A) B).  Kraus operators
// are daggered (transposed when pre_transpose is set, which preserves the
// flag and every Kraus rank).
LinearMapRep adjoint(const LinearMapRep& l);

// ------------------------ rank-2 constructions -----------------------------

// Map with pre_transpose set and one Kraus operator per input vector, built
// from its Schmidt form:  K = Σ_k c_k conj(b_k) a_k†, so every Kraus rank is
// <= 2.  Throws SchmidtRankTooHigh when a vector has rank > 2 at tol 1e-9.
// Satisfies jamiolkowski_operator(result) = Σ_i |psi_i><psi_i|^{T_B}.
LinearMapRep two_decomposable_from_vectors(const std::vector<PureVector>& psis);

// D = |psi><psi|^{T_B} (unnormalized as an operator: trace 1).
Witness witness_from_vector(const PureVector& psi);

// Given a pre_transpose map L and a vector phi on A ⊗ out, the candidates
// (1 ⊗ V_i†) phi, normalized.  When phi is a negative eigenvector of
// (1 ⊗ L)(rho), at least one candidate psi has <psi| rho^{T_B} |psi> < 0,
// and each has Schmidt rank <= rank(V_i).
std::vector<PureVector> rank2_vectors_from_eigenvector(const LinearMapRep& l,
                                                       const PureVector& phi);

// ------------------------------ named maps ---------------------------------

// The five detection maps on d x d matrices (d >= 2; Lambda3/4/5 need d >= 2,
// Lambda5 is the d >= 3 workhorse but is built for any d >= 2):
//   Lambda1(A) = Tr(A) 1 - A                    D = 1 - d P+
//   Lambda2(A) = Tr(A) 1 + A - 2 diag(A)        D = 1 + d P+ - 2 Z
//   Lambda3(A) = Aᵀ + (d-2) diag(A)             D = V + (d-2) Z
//   Lambda4(A) = -Aᵀ + d diag(A)                D = -V + d Z
//   Lambda5(A) = (d-2) Tr(A) 1 + (2d-1) Aᵀ      D = (d-2) 1 + (2d-1) V
// The returned map's Jamiolkowski operator equals the witness exactly (up to
// eigensolver noise for Lambda5, whose Kraus form comes from the spectral
// decomposition of D^{T_B} rather than an explicit rank-2 family).
NamedMap named_map(NamedMapTag t, int d);

// Raw (unnormalized) defining vector families, e.g. {|ij> - |ji> : i < j}
// for Lambda1.  Empty for Lambda5, which has no explicit family here.
std::vector<Vec> witness_family_vectors(NamedMapTag t, int d);

// Σ |v><v| over the raw family (no partial transpose).  Exact integer
// matrices; equals witness(t).op^{T_B}.
Mat family_projector_sum(NamedMapTag t, int d);

// Closed-form action, for cross-checking the Kraus representation.
Mat named_map_action(NamedMapTag t, int d, const Mat& a);

// Witness operator alone (no Kraus construction).
BipartiteOperator named_witness(NamedMapTag t, int d);

// --------------------------- state-induced map ------------------------------

// CP map S with rho = (1 ⊗ S)(P+) (equivalently Choi(S) = d rho), plus the
// composition transpose∘S in pre_transpose form.  Choi(transpose∘S) equals
// d rho^{T_B}.
struct StateMapPair {
    LinearMapRep s;
    LinearMapRep transpose_compose_s;
};

StateMapPair s_map_from_state(const DensityMatrix& rho);

// ------------------------------ k-positivity -------------------------------

// L is k-positive iff its Jamiolkowski operator is nonnegative on vectors of
// Schmidt rank <= k; this runs the rank-constrained minimizer on it.
// ViolationFound certifies "not k-positive"; NoViolationFound is heuristic.
Verdict is_k_positive(const LinearMapRep& l, int k, const SearchParams& p);

} // namespace qdistill
