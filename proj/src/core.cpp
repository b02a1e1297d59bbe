// core.cpp — implementation of the bipartite operator algebra.

#include "qdistill/core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace qdistill {

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

// ---------------------------- BipartiteOperator ----------------------------

BipartiteOperator::BipartiteOperator(int da, int db, Mat m)
    : dim_a(da), dim_b(db), mat(std::move(m)) {
    if (da < 1 || db < 1) {
        throw BadDimension("BipartiteOperator: dims must be >= 1, got " +
                           std::to_string(da) + "x" + std::to_string(db));
    }
    const long side = static_cast<long>(da) * db;
    if (mat.rows() != side || mat.cols() != side) {
        throw DimensionMismatch("BipartiteOperator: matrix is " +
                                std::to_string(mat.rows()) + "x" +
                                std::to_string(mat.cols()) + " but dims give side " +
                                std::to_string(side));
    }
}

bool BipartiteOperator::is_hermitian(double tol) const {
    return max_abs(mat - mat.adjoint()) <= tol;
}

double BipartiteOperator::min_eigenvalue() const {
    return herm_eig(mat).first(0);
}

// ------------------------------- PureVector --------------------------------

PureVector::PureVector(int da, int db, Vec amplitudes)
    : dim_a(da), dim_b(db), amp(std::move(amplitudes)) {
    if (da < 1 || db < 1) {
        throw BadDimension("PureVector: dims must be >= 1");
    }
    if (amp.size() != static_cast<long>(da) * db) {
        throw DimensionMismatch("PureVector: amplitude length " +
                                std::to_string(amp.size()) + " != " +
                                std::to_string(static_cast<long>(da) * db));
    }
    const double n = amp.norm();
    if (n < 1e-12) {
        throw BadParameter("PureVector: vector norm below 1e-12");
    }
    amp /= n;
}

// ------------------------------- operations --------------------------------

Mat kron(const Mat& a, const Mat& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Vec kron_vec(const Vec& a, const Vec& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

BipartiteOperator partial_transpose(const BipartiteOperator& m, Subsystem s) {
    const int da = m.dim_a, db = m.dim_b;
    Mat out(m.side(), m.side());
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) {
                    const cxd v = m.mat(i * db + k, j * db + l);
                    if (s == Subsystem::B)
                        out(i * db + l, j * db + k) = v;  // swap B indices
                    else
                        out(j * db + k, i * db + l) = v;  // swap A indices
                }
    return BipartiteOperator(da, db, std::move(out));
}

Mat partial_trace(const BipartiteOperator& m, Subsystem s) {
    const int da = m.dim_a, db = m.dim_b;
    if (s == Subsystem::B) {
        Mat out = Mat::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k)
                    out(i, j) += m.mat(i * db + k, j * db + k);
        return out;
    }
    Mat out = Mat::Zero(db, db);
    for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
            for (int i = 0; i < da; ++i)
                out(k, l) += m.mat(i * db + k, i * db + l);
    return out;
}

std::pair<RVec, Mat> herm_eig(const Mat& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("herm_eig: matrix not square");
    }
    if (max_abs(m - m.adjoint()) > 1e-9) {
        throw NotHermitian("herm_eig: max|M - M^dag| = " +
                           std::to_string(max_abs(m - m.adjoint())));
    }
    const Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("herm_eig: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SchmidtForm schmidt(const PureVector& v) {
    const int da = v.dim_a, db = v.dim_b;
    Mat c(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            c(i, j) = v.amp(i * db + j);
    Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtForm f;
    f.coefficients = svd.singularValues();
    f.left_vectors = svd.matrixU();
    // |psi> = sum_k s_k |u_k> ⊗ |conj(v_k)>, so the B-side family is conj(V).
    f.right_vectors = svd.matrixV().conjugate();
    return f;
}

int schmidt_rank(const PureVector& v, double tol) {
    const SchmidtForm f = schmidt(v);
    int r = 0;
    for (long k = 0; k < f.coefficients.size(); ++k)
        if (f.coefficients(k) > tol) ++r;
    return r;
}

std::vector<long> regroup_permutation(int da, int db, int n) {
    if (da < 1 || db < 1 || n < 1) {
        throw BadDimension("regroup_permutation: dims and copies must be >= 1");
    }
    long total = 1;
    for (int c = 0; c < n; ++c) total *= static_cast<long>(da) * db;

    // Interleaved radices a1 b1 ... an bn, most significant first.
    std::vector<long> in_weight(2 * n);
    {
        long w = 1;
        for (int f = 2 * n - 1; f >= 0; --f) {
            in_weight[f] = w;
            w *= (f % 2 == 0) ? da : db;
        }
    }
    // Grouped radices a1 ... an b1 ... bn.
    std::vector<long> out_weight(2 * n);
    {
        long w = 1;
        for (int f = 2 * n - 1; f >= 0; --f) {
            out_weight[f] = w;
            w *= (f < n) ? da : db;
        }
    }

    std::vector<long> perm(total);
    for (long x = 0; x < total; ++x) {
        long y = 0;
        for (int f = 0; f < 2 * n; ++f) {
            const long radix = (f % 2 == 0) ? da : db;
            const long digit = (x / in_weight[f]) % radix;
            const int pos = (f % 2 == 0) ? (f / 2) : (n + f / 2);
            y += digit * out_weight[pos];
        }
        perm[x] = y;
    }
    return perm;
}

BipartiteOperator permute_to_bipartite(const Mat& m, int da, int db, int n) {
    const auto perm = regroup_permutation(da, db, n);
    const long total = static_cast<long>(perm.size());
    if (m.rows() != total || m.cols() != total) {
        throw DimensionMismatch("permute_to_bipartite: matrix side " +
                                std::to_string(m.rows()) + " != (da*db)^n = " +
                                std::to_string(total));
    }
    int ga = 1, gb = 1;
    for (int c = 0; c < n; ++c) { ga *= da; gb *= db; }

    Mat out;
    if (total <= 81) {
        Mat p = Mat::Zero(total, total);
        for (long x = 0; x < total; ++x) p(perm[x], x) = 1.0;
        out = p * m * p.transpose();
    } else {
        out.resize(total, total);
        for (long c = 0; c < total; ++c)
            for (long r = 0; r < total; ++r)
                out(perm[r], perm[c]) = m(r, c);
    }
    return BipartiteOperator(ga, gb, std::move(out));
}

Vec permute_vec_to_bipartite(const Vec& v, int da, int db, int n) {
    const auto perm = regroup_permutation(da, db, n);
    const long total = static_cast<long>(perm.size());
    if (v.size() != total) {
        throw DimensionMismatch("permute_vec_to_bipartite: vector length " +
                                std::to_string(v.size()) + " != (da*db)^n");
    }
    Vec out(total);
    for (long x = 0; x < total; ++x) out(perm[x]) = v(x);
    return out;
}

} // namespace qdistill
