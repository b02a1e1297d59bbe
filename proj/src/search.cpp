// search.cpp — rank-constrained quadratic-form minimizer.

#include "qdistill/search.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "qdistill/rng.hpp"

namespace qdistill {

namespace {

constexpr double kTieTol = 1e-14;

int thread_cap() {
    if (const char* env = std::getenv("QDISTILL_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Mat random_isometry(int d, int k, RandomStream& rs) {
    Mat g(d, k);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < k; ++j)
            g(i, j) = rs.gaussian_complex();
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ() * Mat::Identity(d, k);
}

// Amplitude matrix of psi: C(i, j) = psi(i*db + j).
Mat amplitude_matrix(const Vec& psi, int da, int db) {
    Mat c(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            c(i, j) = psi(i * db + j);
    return c;
}

struct RestartOutcome {
    double value = std::numeric_limits<double>::infinity();
    Vec psi;
};

// One restart: alternate exact minimization over span(W_A) ⊗ B and
// A ⊗ span(W_B), where the fixed-side subspace is refreshed from the Schmidt
// form of the current iterate.  Each sweep contains the previous iterate in
// its feasible set, so the value sequence is non-increasing.
RestartOutcome run_restart(const Mat& m, int da, int db, int k,
                           const SearchParams& p, std::uint64_t stream_seed) {
    RandomStream rs(stream_seed);
    const Mat id_a = Mat::Identity(da, da);
    const Mat id_b = Mat::Identity(db, db);
    Mat wa = random_isometry(da, k, rs);

    RestartOutcome best;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < p.max_iters; ++it) {
        // A side fixed: eigensolve on span(W_A) ⊗ B.
        const Mat ca = kron(wa, id_b);
        Eigen::SelfAdjointEigenSolver<Mat> sa(ca.adjoint() * m * ca);
        Vec psi = ca * sa.eigenvectors().col(0);

        // B side fixed from psi's Schmidt form: eigensolve on A ⊗ span(W_B).
        Eigen::JacobiSVD<Mat> svd_b(amplitude_matrix(psi, da, db),
                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Mat wb = svd_b.matrixV().conjugate().leftCols(k);
        const Mat cb = kron(id_a, wb);
        Eigen::SelfAdjointEigenSolver<Mat> sb(cb.adjoint() * m * cb);
        psi = cb * sb.eigenvectors().col(0);
        const double value = sb.eigenvalues()(0);

        if (value < best.value) {
            best.value = value;
            best.psi = psi;
        }
        if (prev - value < p.conv_tol) break;
        prev = value;

        // Refresh the A-side subspace for the next sweep.
        Eigen::JacobiSVD<Mat> svd_a(amplitude_matrix(psi, da, db),
                                    Eigen::ComputeThinU);
        wa = svd_a.matrixU().leftCols(k);
    }
    return best;
}

} // namespace

void SearchParams::validate() const {
    if (restarts < 1 || max_iters < 1) {
        throw BadParameter("SearchParams: restarts and max_iters must be >= 1");
    }
    if (!(conv_tol > 0.0) || !(neg_tol > 0.0)) {
        throw BadParameter("SearchParams: tolerances must be positive");
    }
    if (!(neg_tol > conv_tol)) {
        throw BadParameter("SearchParams: neg_tol must exceed conv_tol");
    }
}

Verdict rank_constrained_min(const BipartiteOperator& m, int k,
                             const SearchParams& p) {
    p.validate();
    if (k < 1) {
        throw BadParameter("rank_constrained_min: k must be >= 1");
    }
    if (!m.is_hermitian(1e-9)) {
        throw NotHermitian("rank_constrained_min: operator is not Hermitian within 1e-9");
    }
    const Mat h = 0.5 * (m.mat + m.mat.adjoint());
    const int da = m.dim_a, db = m.dim_b;

    Verdict v;
    v.schmidt_bound = k;
    v.params = p;

    Vec best_psi;
    if (k >= std::min(da, db)) {
        // Constraint vacuous: the global minimal eigenpair settles it.
        Eigen::SelfAdjointEigenSolver<Mat> solver(h);
        best_psi = solver.eigenvectors().col(0);
        v.value = solver.eigenvalues()(0);
    } else {
        std::vector<RestartOutcome> results(p.restarts);
        const int workers = std::min(p.restarts, thread_cap());
        if (workers <= 1) {
            for (int r = 0; r < p.restarts; ++r) {
                results[r] = run_restart(h, da, db, k, p, mix_seed(p.seed, r));
            }
        } else {
            std::atomic<int> next{0};
            auto drain = [&] {
                for (int r; (r = next.fetch_add(1)) < p.restarts;) {
                    results[r] = run_restart(h, da, db, k, p, mix_seed(p.seed, r));
                }
            };
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int t = 0; t < workers; ++t) pool.emplace_back(drain);
            for (auto& t : pool) t.join();
        }
        // Ordered reduction: value first, ties by restart index.
        int best_idx = 0;
        for (int r = 1; r < p.restarts; ++r) {
            if (results[r].value < results[best_idx].value - kTieTol) best_idx = r;
        }
        best_psi = results[best_idx].psi;
        v.value = results[best_idx].value;
    }

    // Certify: re-evaluate the quadratic form and the rank bound directly.
    PureVector cert(da, db, best_psi);
    const double direct = cert.amp.dot(h * cert.amp).real();
    if (std::abs(direct - v.value) > 1e-10 * std::max(1.0, std::abs(v.value))) {
        throw Error("rank_constrained_min: certificate re-evaluation drifted: " +
                    std::to_string(v.value) + " vs " + std::to_string(direct));
    }
    if (schmidt_rank(cert) > k) {
        throw Error("rank_constrained_min: certificate exceeds the rank bound");
    }
    v.value = direct;
    if (v.value < -p.neg_tol) {
        v.kind = VerdictKind::ViolationFound;
        v.certificate = std::move(cert);
    } else {
        v.kind = VerdictKind::NoViolationFound;
        v.near_zero_warning = v.value < 0.0;
    }
    return v;
}

} // namespace qdistill
