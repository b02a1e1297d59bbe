// reference.hpp — independent oracle implementations used only by tests.
//
// Everything here is written from the textbook definitions with plain loops
// and std::mt19937 randomness, deliberately sharing no code with the library
// paths under test (beyond Eigen itself for eigensolves).

#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace ref {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cxd = std::complex<double>;

// Kronecker product by its entry formula.
inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long p = 0; p < out.rows(); ++p)
        for (long q = 0; q < out.cols(); ++q)
            out(p, q) = a(p / b.rows(), q / b.cols()) * b(p % b.rows(), q % b.cols());
    return out;
}

inline Vec kron_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (long p = 0; p < out.size(); ++p)
        out(p) = a(p / b.size()) * b(p % b.size());
    return out;
}

// Partial transpose over the second factor, by the entry formula
// <i l| M^{T_B} |j k> = <i k| M |j l> with index x = i*db + k.
inline Mat pt_b(const Mat& m, int da, int db) {
    Mat out(m.rows(), m.cols());
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c) {
            const long i = r / db, k = r % db, j = c / db, l = c % db;
            out(i * db + l, j * db + k) = m(r, c);
        }
    return out;
}

inline double min_eig(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> s(0.5 * (m + m.adjoint()));
    return s.eigenvalues()(0);
}

inline double quad(const Mat& m, const Vec& v) {
    return (v.adjoint() * m * v)(0, 0).real();
}

// std::mt19937-based samplers (independent of the library's RNG).
inline Mat random_matrix(int rows, int cols, std::mt19937& g) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out(r, c) = cxd(n(g), n(g));
    return out;
}

inline Mat random_hermitian(int d, std::mt19937& g) {
    const Mat m = random_matrix(d, d, g);
    return 0.5 * (m + m.adjoint());
}

inline Mat random_density_mat(int side, int rank, std::mt19937& g) {
    const Mat gm = random_matrix(side, rank, g);
    Mat rho = gm * gm.adjoint();
    return rho / rho.trace().real();
}

inline Vec random_unit_vec(int n, std::mt19937& g) {
    Vec v = random_matrix(n, 1, g).col(0);
    return v / v.norm();
}

// Product vector a (x) b with random unit factors.
inline Vec random_product_vec(int da, int db, std::mt19937& g) {
    return kron_vec(random_unit_vec(da, g), random_unit_vec(db, g));
}

inline Mat identity(int n) { return Mat::Identity(n, n); }

inline Mat sigma_x() {
    Mat m = Mat::Zero(2, 2);
    m(0, 1) = 1;
    m(1, 0) = 1;
    return m;
}

// Basis vector |i> in dimension n.
inline Vec basis(int n, int i) {
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    return v;
}

} // namespace ref
