// test_core.cpp — bipartite operator algebra: Kronecker products, partial
// transpose/trace, Hermitian eigensolves, Schmidt decomposition, and the
// n-copy regrouping permutation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qdistill/core.hpp"
#include "qdistill/errors.hpp"
#include "qdistill/states.hpp"
#include "reference.hpp"

using namespace qdistill;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
} // namespace

TEST_CASE("kron: identity, diagonal, and basis-permutation cases") {
    CHECK(max_abs(kron(Mat::Identity(2, 2), Mat::Identity(2, 2)) -
                  Mat::Identity(4, 4)) == 0.0);

    Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d1(0, 0) = 1; d1(1, 1) = 2;
    d2(0, 0) = 3; d2(1, 1) = 4;
    Mat expect = Mat::Zero(4, 4);
    expect(0, 0) = 3; expect(1, 1) = 4; expect(2, 2) = 6; expect(3, 3) = 8;
    CHECK(max_abs(kron(d1, d2) - expect) == 0.0);

    const Mat xx = kron(ref::sigma_x(), ref::sigma_x());
    Vec e0 = Vec::Zero(4);
    e0(0) = 1;
    Vec out = xx * e0;
    CHECK(max_abs(out - ref::basis(4, 3)) == 0.0);
}

TEST_CASE("kron and kron_vec agree with the loop-based oracle") {
    std::mt19937 g(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat a = ref::random_matrix(3, 2, g);
        const Mat b = ref::random_matrix(2, 4, g);
        CHECK(max_abs(kron(a, b) - ref::kron(a, b)) == 0.0);

        const Vec u = ref::random_unit_vec(3, g);
        const Vec v = ref::random_unit_vec(4, g);
        CHECK(max_abs(kron_vec(u, v) - ref::kron_vec(u, v)) == 0.0);
    }
}

TEST_CASE("partial_transpose of the maximally entangled projector is V/2") {
    const BipartiteOperator p = max_entangled(2);
    const BipartiteOperator v = flip_operator(2);
    const BipartiteOperator pt = partial_transpose(p, Subsystem::B);
    CHECK(max_abs(pt.mat - 0.5 * v.mat) == 0.0);

    const auto [evals, evecs] = herm_eig(pt.mat);
    CHECK(evals(0) == doctest::Approx(-0.5).epsilon(1e-12));
    for (int i = 1; i < 4; ++i)
        CHECK(evals(i) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial_transpose: product rule, involution, trace, Hermiticity") {
    std::mt19937 g(12);
    const std::pair<int, int> dims[] = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    for (const auto& [da, db] : dims) {
        for (int trial = 0; trial < 20; ++trial) {
            const Mat h = ref::random_hermitian(da * db, g);
            const BipartiteOperator m(da, db, h);

            const BipartiteOperator ptb = partial_transpose(m, Subsystem::B);
            CHECK(max_abs(ptb.mat - ref::pt_b(h, da, db)) == 0.0);
            CHECK(max_abs(partial_transpose(ptb, Subsystem::B).mat - h) == 0.0);
            CHECK(ptb.mat.trace() == h.trace());
            CHECK(ptb.is_hermitian());

            // composing both one-sided transposes gives the full transpose
            const BipartiteOperator pta = partial_transpose(ptb, Subsystem::A);
            CHECK(max_abs(pta.mat - h.transpose()) == 0.0);
        }
        // product operators: PT_B transposes only the second factor
        const Mat s = ref::random_matrix(da, da, g);
        const Mat t = ref::random_matrix(db, db, g);
        const BipartiteOperator prod(da, db, kron(s, t));
        CHECK(max_abs(partial_transpose(prod, Subsystem::B).mat -
                      kron(s, t.transpose())) == 0.0);
        CHECK(max_abs(partial_transpose(prod, Subsystem::A).mat -
                      kron(s.transpose(), t)) == 0.0);
    }
}

TEST_CASE("partial_trace: marginals of P+, product rule, trace preservation") {
    const Mat ma = partial_trace(max_entangled(3), Subsystem::A);
    CHECK(max_abs(ma - Mat::Identity(3, 3) / 3.0) < 1e-15);
    const Mat mb = partial_trace(max_entangled(3), Subsystem::B);
    CHECK(max_abs(mb - Mat::Identity(3, 3) / 3.0) < 1e-15);

    std::mt19937 g(13);
    const Mat s = ref::random_matrix(3, 3, g);
    const Mat t = ref::random_matrix(2, 2, g);
    const BipartiteOperator prod(3, 2, kron(s, t));
    CHECK(max_abs(partial_trace(prod, Subsystem::A) - s.trace() * t) < 1e-13);
    CHECK(max_abs(partial_trace(prod, Subsystem::B) - t.trace() * s) < 1e-13);

    const DensityMatrix rho = random_density(3, 4, 5, 21);
    CHECK(partial_trace(rho.op, Subsystem::B).trace().real() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(partial_trace(rho.op, Subsystem::A).trace().real() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("herm_eig: closed-form spectra, ordering, reconstruction, errors") {
    // 1 - 2 P+ on 2x2: rank-1 projector shifted, spectrum {-1, 1, 1, 1}
    const Mat m = Mat::Identity(4, 4) - 2.0 * max_entangled(2).mat;
    const auto [evals, evecs] = herm_eig(m);
    CHECK(evals(0) == doctest::Approx(-1.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i)
        CHECK(evals(i) == doctest::Approx(1.0).epsilon(1e-12));

    Mat diag = Mat::Zero(3, 3);
    diag(0, 0) = 3; diag(1, 1) = 1; diag(2, 2) = 2;
    const auto [dv, dvec] = herm_eig(diag);
    CHECK(dv(0) == doctest::Approx(1.0));
    CHECK(dv(1) == doctest::Approx(2.0));
    CHECK(dv(2) == doctest::Approx(3.0));
    // eigenvectors of a diagonal matrix are basis permutations
    CHECK(std::abs(dvec(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(dvec(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(dvec(0, 2)) == doctest::Approx(1.0));

    std::mt19937 g(14);
    for (int trial = 0; trial < 10; ++trial) {
        const Mat h = ref::random_hermitian(9, g);
        const auto [ev, evv] = herm_eig(h);
        Mat rec = Mat::Zero(9, 9);
        for (int i = 0; i < 9; ++i)
            rec += ev(i) * evv.col(i) * evv.col(i).adjoint();
        CHECK(max_abs(rec - h) < 1e-9);
        CHECK(max_abs(evv.adjoint() * evv - Mat::Identity(9, 9)) < 1e-9);
        for (int i = 1; i < 9; ++i) CHECK(ev(i) >= ev(i - 1));
    }

    Mat nh = Mat::Zero(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(herm_eig(nh), NotHermitian);
}

TEST_CASE("schmidt: closed-form coefficients and reconstruction") {
    Vec bell = Vec::Zero(4);
    bell(0) = 1; bell(3) = 1;
    const SchmidtForm f = schmidt(PureVector(2, 2, bell));
    CHECK(f.coefficients(0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(f.coefficients(1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

    Vec prod = Vec::Zero(4);
    prod(1) = 1;  // |01>
    const SchmidtForm fp = schmidt(PureVector(2, 2, prod));
    CHECK(fp.coefficients(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fp.coefficients(1) == doctest::Approx(0.0).epsilon(1e-12));

    Vec skew = Vec::Zero(4);
    skew(0) = 2; skew(3) = 1;  // (2|00> + |11>)/sqrt(5) after normalization
    const SchmidtForm fs = schmidt(PureVector(2, 2, skew));
    CHECK(fs.coefficients(0) == doctest::Approx(2 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(fs.coefficients(1) == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-12));

    std::mt19937 g(15);
    const std::pair<int, int> dims[] = {{2, 2}, {2, 5}, {3, 3}, {4, 3}, {5, 5}};
    for (const auto& [da, db] : dims) {
        for (int trial = 0; trial < 20; ++trial) {
            const PureVector v(da, db, ref::random_unit_vec(da * db, g));
            const SchmidtForm fr = schmidt(v);
            Vec rec = Vec::Zero(da * db);
            for (long k = 0; k < fr.coefficients.size(); ++k)
                rec += fr.coefficients(k) *
                       kron_vec(fr.left_vectors.col(k), fr.right_vectors.col(k));
            CHECK(max_abs(rec - v.amp) < 1e-10);
            for (long k = 1; k < fr.coefficients.size(); ++k)
                CHECK(fr.coefficients(k) <= fr.coefficients(k - 1));
        }
    }
}

TEST_CASE("schmidt_rank: full-rank, antisymmetric pair, and product vectors") {
    Vec ghzlike = Vec::Zero(9);
    ghzlike(0) = 1; ghzlike(4) = 1; ghzlike(8) = 1;
    CHECK(schmidt_rank(PureVector(3, 3, ghzlike)) == 3);

    Vec anti = Vec::Zero(9);
    anti(1) = 1; anti(3) = -1;  // |01> - |10>
    CHECK(schmidt_rank(PureVector(3, 3, anti)) == 2);

    std::mt19937 g(16);
    const Vec p = ref::random_product_vec(3, 4, g);
    CHECK(schmidt_rank(PureVector(3, 4, p)) == 1);

    for (std::uint64_t s = 1; s <= 100; ++s)
        CHECK(schmidt_rank(random_rank2_vector(3, 3, s)) == 2);
}

TEST_CASE("regroup permutation: pair order to sides order") {
    // two 2x2 pairs: (a1 b1 a2 b2) -> (a1 a2 b1 b2)
    const std::vector<long> perm = regroup_permutation(2, 2, 2);
    REQUIRE(perm.size() == 16);
    for (int a1 = 0; a1 < 2; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    const long in = ((a1 * 2 + b1) * 2 + a2) * 2 + b2;
                    const long out = ((a1 * 2 + a2) * 2 + b1) * 2 + b2;
                    CHECK(perm[in] == out);
                }
}

TEST_CASE("permute_to_bipartite: identity at n=1, product case, spectrum") {
    std::mt19937 g(17);
    const Mat h = ref::random_hermitian(6, g);
    const BipartiteOperator id1 = permute_to_bipartite(h, 2, 3, 1);
    CHECK(max_abs(id1.mat - h) == 0.0);

    const Mat s = ref::random_matrix(2, 2, g);
    const Mat t = ref::random_matrix(3, 3, g);
    const Mat pair = kron(s, t);
    const BipartiteOperator two = permute_to_bipartite(kron(pair, pair), 2, 3, 2);
    CHECK(max_abs(two.mat - kron(kron(s, s), kron(t, t))) < 1e-12);

    const DensityMatrix rho = random_density(2, 2, 3, 31);
    const Mat sq = kron(rho.op.mat, rho.op.mat);
    const BipartiteOperator re = permute_to_bipartite(sq, 2, 2, 2);
    const auto [before, bv] = herm_eig(sq);
    const auto [after, av] = herm_eig(re.mat);
    for (long i = 0; i < before.size(); ++i)
        CHECK(after(i) == doctest::Approx(before(i)).epsilon(1e-10));
}

TEST_CASE("permute_to_bipartite matches the vector permutation on outer products") {
    std::mt19937 g(18);
    // small side (matrix-product path) and large side (index-remap path)
    const std::tuple<int, int, int> cases[] = {{2, 2, 2}, {3, 3, 2}, {3, 3, 3}};
    for (const auto& [da, db, n] : cases) {
        long side = 1;
        for (int i = 0; i < n; ++i) side *= da * db;
        Vec v = ref::random_unit_vec(static_cast<int>(side), g);
        const Vec pv = permute_vec_to_bipartite(v, da, db, n);
        const Mat outer = v * v.adjoint();
        const BipartiteOperator pm = permute_to_bipartite(outer, da, db, n);
        CHECK(max_abs(pm.mat - pv * pv.adjoint()) == 0.0);
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(BipartiteOperator(2, 3, Mat::Identity(4, 4)), DimensionMismatch);
    CHECK_THROWS_AS(BipartiteOperator(0, 3, Mat::Identity(0, 0)), BadDimension);
    CHECK_THROWS_AS(PureVector(2, 2, Vec::Zero(3)), DimensionMismatch);
    CHECK_THROWS_AS(PureVector(2, 2, Vec::Zero(4)), BadParameter);

    Vec v = Vec::Zero(4);
    v(0) = 2.0;  // normalized on construction
    CHECK(PureVector(2, 2, v).amp.norm() == doctest::Approx(1.0).epsilon(1e-14));
}
