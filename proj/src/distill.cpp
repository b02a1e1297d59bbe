// distill.cpp — distillability decisions, cross-checks, two-copy identities.

#include "qdistill/distill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdistill/rng.hpp"

namespace qdistill {

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// (1 ⊗ Lambda1)(sigma) = Tr_B(sigma) ⊗ 1 - sigma, the closed form of the
// trace-minus-identity map on the B factor.
Mat apply_reduction_b(const BipartiteOperator& sigma) {
    const Mat marg = partial_trace(sigma, Subsystem::B);
    return kron(marg, Mat::Identity(sigma.dim_b, sigma.dim_b)) - sigma.mat;
}

double quad_form(const Mat& m, const Vec& v) {
    return v.dot(m * v).real();
}

// Columns of the eigenvalue-1 eigenspace of a rank-2 orthogonal projector.
Mat projector_isometry(const Mat& p, const char* who) {
    if (p.rows() != p.cols()) {
        throw NotProjector(std::string(who) + ": not square");
    }
    if (max_abs(p - p.adjoint()) > 1e-9 || max_abs(p * p - p) > 1e-9) {
        throw NotProjector(std::string(who) + ": not idempotent/Hermitian within 1e-9");
    }
    if (std::abs(p.trace().real() - 2.0) > 1e-6) {
        throw WrongRank(std::string(who) + ": trace " +
                        std::to_string(p.trace().real()) + " != 2");
    }
    const auto [evals, evecs] = herm_eig(p);
    Mat w(p.rows(), 2);
    int filled = 0;
    for (long k = 0; k < evals.size() && filled < 2; ++k) {
        if (evals(k) > 0.5) w.col(filled++) = evecs.col(k);
    }
    if (filled != 2) {
        throw WrongRank(std::string(who) + ": eigenvalue-1 space is not 2-dimensional");
    }
    return w;
}

} // namespace

Verdict one_distillable(const DensityMatrix& rho, const SearchParams& p) {
    Verdict v = rank_constrained_min(partial_transpose(rho.op, Subsystem::B), 2, p);
    v.copies = 1;
    return v;
}

Verdict n_distillable(const DensityMatrix& rho, int n, const SearchParams& p,
                      long dim_cap) {
    const DensityMatrix sigma = tensor_power(rho, n, dim_cap);
    if (n > 1) {
        // Partial transpose must commute with the regrouped tensor power.
        const Mat ptr = partial_transpose(rho.op, Subsystem::B).mat;
        Mat power = ptr;
        for (int c = 1; c < n; ++c) power = kron(power, ptr);
        const Mat lhs = partial_transpose(sigma.op, Subsystem::B).mat;
        const Mat rhs =
            permute_to_bipartite(power, rho.op.dim_a, rho.op.dim_b, n).mat;
        if (max_abs(lhs - rhs) > 1e-12) {
            throw Error("n_distillable: tensor-power/partial-transpose "
                        "commutation identity failed");
        }
    }
    Verdict v = rank_constrained_min(partial_transpose(sigma.op, Subsystem::B), 2, p);
    v.copies = n;
    return v;
}

double projector_test(const DensityMatrix& rho, const Mat& p_a, const Mat& q_b) {
    if (p_a.rows() != rho.op.dim_a || q_b.rows() != rho.op.dim_b) {
        throw DimensionMismatch("projector_test: projector dims do not match the state");
    }
    const Mat wp = projector_isometry(p_a, "projector_test: P");
    const Mat wq = projector_isometry(q_b, "projector_test: Q");
    const Mat iso = kron(wp, wq);  // (da*db) x 4
    Mat compressed = iso.adjoint() * rho.op.mat * iso;
    const double tr = compressed.trace().real();
    if (tr < 1e-12) return 0.0;
    compressed /= tr;
    const BipartiteOperator sub(2, 2, std::move(compressed));
    return partial_transpose(sub, Subsystem::B).min_eigenvalue();
}

CrosscheckReport two_positivity_crosscheck(const DensityMatrix& rho,
                                           const SearchParams& p) {
    CrosscheckReport r;
    r.direct = one_distillable(rho, p);
    const StateMapPair maps = s_map_from_state(rho);
    r.via_map = is_k_positive(maps.transpose_compose_s, 2, p);
    r.kinds_agree = (r.direct.kind == r.via_map.kind);
    if (std::abs(r.direct.value) > 1e-300) {
        r.value_ratio = r.via_map.value / r.direct.value;
    }
    return r;
}

DensityMatrix filter_state(const DensityMatrix& rho, const Mat& a_op) {
    if (a_op.rows() != rho.op.dim_a || a_op.cols() != rho.op.dim_a) {
        throw DimensionMismatch("filter_state: filter must be dim_a x dim_a");
    }
    const Mat ext = kron(a_op, Mat::Identity(rho.op.dim_b, rho.op.dim_b));
    Mat sigma = ext * rho.op.mat * ext.adjoint();
    const double prob = sigma.trace().real();
    if (prob <= 1e-12) {
        throw ZeroProbability("filter_state: outcome probability " +
                              std::to_string(prob) + " <= 1e-12");
    }
    sigma /= prob;
    return DensityMatrix(BipartiteOperator(rho.op.dim_a, rho.op.dim_b,
                                           std::move(sigma)));
}

double witness_class_value(const Witness& w, const Mat& a_op,
                           const DensityMatrix& rho) {
    if (w.op.dim_a != rho.op.dim_a || w.op.dim_b != rho.op.dim_b) {
        throw DimensionMismatch("witness_class_value: witness/state dims differ");
    }
    if (a_op.rows() != w.op.dim_a || a_op.cols() != w.op.dim_a) {
        throw DimensionMismatch("witness_class_value: filter must be dim_a x dim_a");
    }
    const Mat ext = kron(a_op, Mat::Identity(w.op.dim_b, w.op.dim_b));
    return (ext * w.op.mat * ext.adjoint() * rho.op.mat).trace().real();
}

TwoCopyReductionReport reduction_two_copy_identity(const DensityMatrix& rho1,
                                                   const DensityMatrix& rho2) {
    const int d = rho1.op.dim_a;
    if (rho1.op.dim_b != d || rho2.op.dim_a != d || rho2.op.dim_b != d) {
        throw DimensionMismatch("reduction_two_copy_identity: states must share d ⊗ d");
    }
    TwoCopyReductionReport rep;

    const BipartiteOperator big =
        permute_to_bipartite(kron(rho1.op.mat, rho2.op.mat), d, d, 2);
    const Mat lhs = apply_reduction_b(big);

    // Right side assembled from single-pair pieces in pairwise order.
    const Mat marg1 = kron(partial_trace(rho1.op, Subsystem::B),
                           Mat::Identity(d, d));
    const Mat term1 = kron(marg1, apply_reduction_b(rho2.op));
    const Mat term2 = kron(apply_reduction_b(rho1.op), rho2.op.mat);
    const Mat rhs = permute_to_bipartite(term1 + term2, d, d, 2).mat;

    rep.identity_residual = max_abs(lhs - rhs);

    const auto [e1, v1] = herm_eig(apply_reduction_b(rho1.op));
    const auto [e2, v2] = herm_eig(apply_reduction_b(rho2.op));
    if (e1(0) < -1e-12 && e2(0) < -1e-12) {
        const Vec prod = permute_vec_to_bipartite(
            kron_vec(v1.col(0), v2.col(0)), d, d, 2);
        rep.product_vector_checked = true;
        rep.product_vector_value = quad_form(lhs, prod);
    }
    return rep;
}

TwoCopyWitnessReport two_copy_witness_separability_check(int d, int samples,
                                                         std::uint64_t seed) {
    TwoCopyWitnessReport rep;
    const Mat v = flip_operator(d).mat;
    const auto [ps, pa] = sym_antisym(d);

    // Pairwise order: 1 - V1 ⊗ V2 against twice the cross products.
    const long side = static_cast<long>(d) * d * d * d;
    const Mat lhs = Mat::Identity(side, side) - kron(v, v);
    const Mat rhs = 2.0 * (kron(ps.mat, pa.mat) + kron(pa.mat, ps.mat));
    rep.decomposition_max_err = max_abs(lhs - rhs);

    // The same operator regrouped is the reduction witness on d^2 ⊗ d^2.
    const Mat regrouped = permute_to_bipartite(kron(v, v), d, d, 2).mat;
    const Mat witness_err = regrouped - flip_operator(d * d).mat;
    rep.decomposition_max_err = std::max(rep.decomposition_max_err,
                                         max_abs(witness_err));
    rep.decomposition_exact = (rep.decomposition_max_err == 0.0);
    rep.witness_psd = herm_eig(lhs).first(0) >= -1e-9;

    rep.samples = samples;
    rep.ppt_factors_nonnegative = true;
    for (int s = 0; s < samples; ++s) {
        // Odd samples are separable mixtures, guaranteeing a PPT population
        // even in dimensions where generic states are almost surely NPT.
        const DensityMatrix rho =
            (s % 2 == 0)
                ? random_density(d, d, d * d, mix_seed(seed, s))
                : random_separable(d, d, 2 * d * d, mix_seed(seed, 3000 + s));
        const PureVector psi1 = random_rank2_vector(d, d, mix_seed(seed, 1000 + s));
        const PureVector psi2 = random_rank2_vector(d, d, mix_seed(seed, 2000 + s));
        const Mat pt = partial_transpose(rho.op, Subsystem::B).mat;
        const double t1 = quad_form(pt, psi1.amp);
        const double t2 = quad_form(pt, psi2.amp);

        const DensityMatrix sigma = tensor_power(rho, 2);
        const Mat pt2 = partial_transpose(sigma.op, Subsystem::B).mat;
        const Vec prod = permute_vec_to_bipartite(
            kron_vec(psi1.amp, psi2.amp), d, d, 2);
        const double full = quad_form(pt2, prod);
        rep.max_factorization_err =
            std::max(rep.max_factorization_err, std::abs(full - t1 * t2));

        if (herm_eig(pt).first(0) >= -1e-9) {
            ++rep.ppt_samples;
            if (t1 < -1e-9 || t2 < -1e-9) rep.ppt_factors_nonnegative = false;
        }
    }
    return rep;
}

PrepassResult named_map_prepass(const DensityMatrix& rho, double neg_tol) {
    PrepassResult res;
    if (rho.op.dim_a != rho.op.dim_b) return res;
    res.applicable = true;
    const int d = rho.op.dim_a;
    const Mat swap = flip_operator(d).mat;

    constexpr NamedMapTag kTags[] = {NamedMapTag::Lambda1, NamedMapTag::Lambda2,
                                     NamedMapTag::Lambda3, NamedMapTag::Lambda4,
                                     NamedMapTag::Lambda5};
    for (NamedMapTag t : kTags) {
        const Mat w = named_witness(t, d).mat;
        const double vb = (w * rho.op.mat).trace().real();
        const double va = (swap * w * swap * rho.op.mat).trace().real();
        res.entries.push_back({named_map_name(t), 'B', vb});
        res.entries.push_back({named_map_name(t), 'A', va});
        if (vb < -neg_tol || va < -neg_tol) res.violation = true;
    }
    if (!res.violation) return res;

    // Pull an explicit certificate out of the rank-2 families.
    const Mat pt = partial_transpose(rho.op, Subsystem::B).mat;
    double best = std::numeric_limits<double>::infinity();
    std::optional<PureVector> best_vec;
    for (NamedMapTag t : {NamedMapTag::Lambda1, NamedMapTag::Lambda2,
                          NamedMapTag::Lambda3, NamedMapTag::Lambda4}) {
        for (const Vec& raw : witness_family_vectors(t, d)) {
            PureVector cand(d, d, raw);
            const double q = quad_form(pt, cand.amp);
            if (q < best) {
                best = q;
                best_vec = std::move(cand);
            }
        }
    }
    if (best_vec && best < -neg_tol) {
        res.certificate = std::move(best_vec);
        res.certificate_value = best;
    }
    return res;
}

LiftedCertificate lift_certificate(const DensityMatrix& rho,
                                   const PureVector& psi, int n,
                                   long dim_cap) {
    if (psi.dim_a != rho.op.dim_a || psi.dim_b != rho.op.dim_b) {
        throw DimensionMismatch("lift_certificate: vector/state dims differ");
    }
    if (n < 1) throw BadParameter("lift_certificate: copies must be >= 1");

    // Product companion: the basis vector of largest diagonal weight has
    // <e| rho^{T_B} |e> = rho(e, e) > 0.
    long arg = 0;
    for (long i = 1; i < rho.op.side(); ++i) {
        if (rho.op.mat(i, i).real() > rho.op.mat(arg, arg).real()) arg = i;
    }
    Vec companion = Vec::Zero(rho.op.side());
    companion(arg) = 1.0;

    Vec prod = psi.amp;
    for (int c = 1; c < n; ++c) prod = kron_vec(prod, companion);

    const DensityMatrix sigma = tensor_power(rho, n, dim_cap);
    LiftedCertificate out{
        PureVector(sigma.op.dim_a, sigma.op.dim_b,
                   permute_vec_to_bipartite(prod, rho.op.dim_a, rho.op.dim_b, n)),
        0.0};
    out.value = quad_form(partial_transpose(sigma.op, Subsystem::B).mat,
                          out.vector.amp);
    return out;
}

} // namespace qdistill
