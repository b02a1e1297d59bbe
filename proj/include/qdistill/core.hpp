// core.hpp — Bipartite operator algebra: tensor products, partial
// transpose/trace, Hermitian eigensolves, Schmidt decomposition, and the
// n-copy regrouping permutation.
//
// Basis convention used everywhere: the product basis of H_A ⊗ H_B is ordered
// |i>_A ⊗ |j>_B  ↦  index i*dim_b + j  (row-major in the A index).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "qdistill/errors.hpp"

namespace qdistill {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using cxd = std::complex<double>;

enum class Subsystem { A, B };

// ---------------------------- core types -----------------------------------

// Square operator on H_A ⊗ H_B with the basis ordering above.
struct BipartiteOperator {
    int dim_a = 0;
    int dim_b = 0;
    Mat mat;

    BipartiteOperator() = default;
    BipartiteOperator(int da, int db, Mat m);  // throws DimensionMismatch

    int side() const { return dim_a * dim_b; }
    bool is_hermitian(double tol = 1e-9) const;
    double trace_real() const { return mat.trace().real(); }
    double min_eigenvalue() const;  // Hermitian part assumed; see herm_eig
};

// Unit vector on H_A ⊗ H_B.  The constructor normalizes; a vector with norm
// below 1e-12 is rejected.
struct PureVector {
    int dim_a = 0;
    int dim_b = 0;
    Vec amp;

    PureVector() = default;
    PureVector(int da, int db, Vec amplitudes);  // throws BadParameter
};

// |psi> = sum_k coefficients(k) * left_vectors.col(k) ⊗ right_vectors.col(k),
// coefficients sorted descending, both column families orthonormal.
struct SchmidtForm {
    RVec coefficients;
    Mat left_vectors;   // dim_a x r
    Mat right_vectors;  // dim_b x r
};

// ----------------------------- operations ----------------------------------

Mat kron(const Mat& a, const Mat& b);
Vec kron_vec(const Vec& a, const Vec& b);

// Transpose of the chosen tensor factor; involutive and trace-preserving.
BipartiteOperator partial_transpose(const BipartiteOperator& m, Subsystem s);

// Trace out the chosen factor; returns the reduced matrix on the other one.
Mat partial_trace(const BipartiteOperator& m, Subsystem s);

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
// Throws NotHermitian if max|M - M†| exceeds 1e-9; the Hermitian part
// (M + M†)/2 is what gets decomposed.
std::pair<RVec, Mat> herm_eig(const Mat& m);

// Schmidt decomposition across the A|B cut (SVD of the amplitude matrix).
SchmidtForm schmidt(const PureVector& v);

// Number of Schmidt coefficients above tol.
int schmidt_rank(const PureVector& v, double tol = 1e-9);

// Permutation taking the interleaved n-copy index (a1 b1 a2 b2 ... an bn) to
// the grouped index (a1 ... an b1 ... bn); digit a1 most significant.
std::vector<long> regroup_permutation(int da, int db, int n);

// Conjugate an operator on (H_A ⊗ H_B)^{⊗ n} by the regrouping permutation,
// producing a bipartite operator on H_A^{⊗n} ⊗ H_B^{⊗n}.  Small sides
// (≤ 81) go through an explicit permutation matrix; larger ones are index
// remapped directly.
BipartiteOperator permute_to_bipartite(const Mat& m, int da, int db, int n);

// Same regrouping applied to a vector.
Vec permute_vec_to_bipartite(const Vec& v, int da, int db, int n);

} // namespace qdistill
