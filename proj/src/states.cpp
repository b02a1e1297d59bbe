// states.cpp — reference operators, state families, random generators.

#include "qdistill/states.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

#include "qdistill/rng.hpp"

namespace qdistill {

namespace {

Mat gaussian_matrix(int rows, int cols, RandomStream& rs) {
    Mat g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            g(i, j) = rs.gaussian_complex();
    return g;
}

void require_dim(int d, const char* who) {
    if (d < 2) {
        throw BadDimension(std::string(who) + ": dimension must be >= 2, got " +
                           std::to_string(d));
    }
}

} // namespace

DensityMatrix::DensityMatrix(BipartiteOperator o) : op(std::move(o)) {
    if (!op.is_hermitian(1e-9)) {
        throw BadParameter("DensityMatrix: operator is not Hermitian within 1e-9");
    }
    if (std::abs(op.trace_real() - 1.0) > 1e-9 ||
        std::abs(op.mat.trace().imag()) > 1e-9) {
        throw BadParameter("DensityMatrix: trace differs from 1 by more than 1e-9");
    }
    if (op.side() <= 256 && op.min_eigenvalue() < -1e-9) {
        throw BadParameter("DensityMatrix: smallest eigenvalue below -1e-9");
    }
}

BipartiteOperator max_entangled(int d) {
    require_dim(d, "max_entangled");
    Mat m = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i * d + i, j * d + j) = 1.0 / d;
    return BipartiteOperator(d, d, std::move(m));
}

BipartiteOperator flip_operator(int d) {
    require_dim(d, "flip_operator");
    Mat m = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i * d + j, j * d + i) = 1.0;
    return BipartiteOperator(d, d, std::move(m));
}

std::pair<BipartiteOperator, BipartiteOperator> sym_antisym(int d) {
    const Mat v = flip_operator(d).mat;
    const Mat id = Mat::Identity(d * d, d * d);
    return {BipartiteOperator(d, d, 0.5 * (id + v)),
            BipartiteOperator(d, d, 0.5 * (id - v))};
}

BipartiteOperator diag_projector_z(int d) {
    require_dim(d, "diag_projector_z");
    Mat m = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) m(i * d + i, i * d + i) = 1.0;
    return BipartiteOperator(d, d, std::move(m));
}

DensityMatrix werner(int d, double alpha) {
    require_dim(d, "werner");
    if (!(alpha >= -1.0 && alpha <= 1.0)) {
        throw BadParameter("werner: alpha must lie in [-1, 1], got " +
                           std::to_string(alpha));
    }
    const Mat id = Mat::Identity(d * d, d * d);
    Mat m = (id + alpha * flip_operator(d).mat) / (d * d + alpha * d);
    return DensityMatrix(BipartiteOperator(d, d, std::move(m)));
}

DensityMatrix isotropic(int d, double fidelity) {
    require_dim(d, "isotropic");
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw BadParameter("isotropic: fidelity must lie in [0, 1], got " +
                           std::to_string(fidelity));
    }
    const Mat id = Mat::Identity(d * d, d * d);
    const Mat plus = max_entangled(d).mat;
    Mat m = (1.0 - fidelity) * (id - plus) / (d * d - 1.0) + fidelity * plus;
    return DensityMatrix(BipartiteOperator(d, d, std::move(m)));
}

DensityMatrix random_density(int da, int db, int rank, std::uint64_t seed) {
    if (da < 2 || db < 2) {
        throw BadDimension("random_density: dims must be >= 2");
    }
    const int side = da * db;
    if (rank < 1 || rank > side) {
        throw BadParameter("random_density: rank must lie in [1, da*db]");
    }
    RandomStream rs(seed);
    const Mat g = gaussian_matrix(side, rank, rs);
    Mat m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(BipartiteOperator(da, db, std::move(m)));
}

DensityMatrix random_separable(int da, int db, int terms, std::uint64_t seed) {
    if (da < 2 || db < 2) {
        throw BadDimension("random_separable: dims must be >= 2");
    }
    if (terms < 1) {
        throw BadParameter("random_separable: terms must be >= 1");
    }
    RandomStream rs(seed);
    const auto unit_vec = [&rs](int d) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = rs.gaussian_complex();
        return Vec(v / v.norm());
    };
    Mat m = Mat::Zero(da * db, da * db);
    for (int t = 0; t < terms; ++t) {
        const Vec prod = kron_vec(unit_vec(da), unit_vec(db));
        m += prod * prod.adjoint();
    }
    m /= static_cast<double>(terms);
    return DensityMatrix(BipartiteOperator(da, db, std::move(m)));
}

PureVector random_rank2_vector(int da, int db, std::uint64_t seed) {
    if (da < 2 || db < 2) {
        throw BadDimension("random_rank2_vector: dims must be >= 2");
    }
    RandomStream rs(seed);
    // Orthonormal pair on each side via thin QR of a Gaussian d x 2 block.
    const auto pair_basis = [&rs](int d) {
        const Mat g = gaussian_matrix(d, 2, rs);
        Eigen::HouseholderQR<Mat> qr(g);
        return Mat(qr.householderQ() * Mat::Identity(d, 2));
    };
    const Mat a = pair_basis(da);
    const Mat b = pair_basis(db);
    Eigen::Vector2cd c;
    c << rs.gaussian_complex(), rs.gaussian_complex();
    c.normalize();
    Vec amp = c(0) * kron_vec(a.col(0), b.col(0)) + c(1) * kron_vec(a.col(1), b.col(1));
    return PureVector(da, db, std::move(amp));
}

Mat random_unitary(int d, std::uint64_t seed) {
    require_dim(d, "random_unitary");
    RandomStream rs(seed);
    const Mat g = gaussian_matrix(d, d, rs);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = q.adjoint() * g;
    // Fix the phase freedom so the distribution is Haar.
    for (int i = 0; i < d; ++i) {
        const cxd rii = r(i, i);
        q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n, long dim_cap) {
    if (n < 1) {
        throw BadParameter("tensor_power: copies must be >= 1");
    }
    const long base = rho.op.side();
    long side = 1;
    for (int c = 0; c < n; ++c) {
        side *= base;
        if (side > dim_cap) {
            throw CapExceeded("tensor_power: side " + std::to_string(base) + "^" +
                              std::to_string(n) + " exceeds cap " +
                              std::to_string(dim_cap));
        }
    }
    if (n == 1) return rho;
    Mat m = rho.op.mat;
    for (int c = 1; c < n; ++c) m = kron(m, rho.op.mat);
    return DensityMatrix(permute_to_bipartite(m, rho.op.dim_a, rho.op.dim_b, n));
}

} // namespace qdistill
