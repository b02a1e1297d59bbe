// states.hpp — Reference operators and state families: maximally entangled
// projector, flip operator, symmetric/antisymmetric projectors, Werner and
// isotropic families, seeded random states, and n-copy tensor powers.

#pragma once

#include <cstdint>
#include <utility>

#include "qdistill/core.hpp"

namespace qdistill {

// Validated density matrix: Hermitian within 1e-9, unit trace within 1e-9,
// and (for sides up to 256, where the check is an eigensolve) smallest
// eigenvalue >= -1e-9.  Larger operators skip only the spectral check.
struct DensityMatrix {
    BipartiteOperator op;

    DensityMatrix() = default;
    explicit DensityMatrix(BipartiteOperator o);  // throws BadParameter
};

// P+ = (1/d) sum_{ij} |ii><jj|, the maximally entangled projector on d ⊗ d.
BipartiteOperator max_entangled(int d);

// V = sum_{ij} |ij><ji|.  Satisfies V = P_sym - P_anti and d (1⊗T)(P+) = V.
BipartiteOperator flip_operator(int d);

// {P_sym, P_anti} = {(1+V)/2, (1-V)/2}.
std::pair<BipartiteOperator, BipartiteOperator> sym_antisym(int d);

// Z = sum_i |ii><ii|.
BipartiteOperator diag_projector_z(int d);

// rho_alpha = (1 + alpha V) / (d^2 + alpha d), alpha in [-1, 1].
// The partial transpose has negative spectrum exactly when alpha < -1/d.
DensityMatrix werner(int d, double alpha);

// rho_F = (1-F) (1 - P+) / (d^2 - 1) + F P+, F in [0, 1];  Tr(rho_F P+) = F.
DensityMatrix isotropic(int d, double fidelity);

// rho = G G† / Tr(G G†) with G a (da*db) x rank standard complex Gaussian
// matrix drawn from the given seed.
DensityMatrix random_density(int da, int db, int rank, std::uint64_t seed);

// Uniform mixture of `terms` random product projectors |a><a| ⊗ |b><b|.
// Separable by construction, hence PPT; generically full rank once
// terms >= da*db.
DensityMatrix random_separable(int da, int db, int terms, std::uint64_t seed);

// c1 |a1 b1> + c2 |a2 b2> with orthonormal random pairs and random weights;
// Schmidt rank exactly 2 (up to measure-zero seeds).
PureVector random_rank2_vector(int da, int db, std::uint64_t seed);

// Haar-distributed d x d unitary (QR of a Gaussian matrix, phases fixed).
Mat random_unitary(int d, std::uint64_t seed);

// n-fold tensor power regrouped to (A1..An | B1..Bn).  Throws CapExceeded if
// the resulting side (da*db)^n exceeds dim_cap.
DensityMatrix tensor_power(const DensityMatrix& rho, int n, long dim_cap = 4096);

} // namespace qdistill
