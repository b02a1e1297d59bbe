// maps.cpp — map application, Jamiolkowski correspondence, rank-2 and named
// map constructions, k-positivity.

#include "qdistill/maps.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qdistill {

namespace {

void require_kraus(const LinearMapRep& l, const char* who) {
    if (l.kraus.empty()) {
        throw BadParameter(std::string(who) + ": map has no Kraus operators");
    }
    const long rows = l.kraus[0].rows(), cols = l.kraus[0].cols();
    for (const Mat& k : l.kraus) {
        if (k.rows() != rows || k.cols() != cols) {
            throw DimensionMismatch(std::string(who) + ": Kraus shapes differ");
        }
    }
}

// Pre-transpose Kraus operator of the map whose Jamiolkowski operator picks
// up |v><v|^{T_B}:  K(m, i) = conj(v(i * d_out + m)).
Mat kraus_from_pt_vector(const Vec& v, int d_in, int d_out) {
    Mat k(d_out, d_in);
    for (int i = 0; i < d_in; ++i)
        for (int m = 0; m < d_out; ++m)
            k(m, i) = std::conj(v(i * d_out + m));
    return k;
}

Vec basis_pair(int d, int i, int j) {
    Vec v = Vec::Zero(d * d);
    v(i * d + j) = 1.0;
    return v;
}

Mat diag_of(const Mat& a) {
    return a.diagonal().asDiagonal();
}

} // namespace

const char* named_map_name(NamedMapTag t) {
    switch (t) {
        case NamedMapTag::Lambda1: return "lambda1";
        case NamedMapTag::Lambda2: return "lambda2";
        case NamedMapTag::Lambda3: return "lambda3";
        case NamedMapTag::Lambda4: return "lambda4";
        case NamedMapTag::Lambda5: return "lambda5";
    }
    return "?";
}

// ----------------------------- map application -----------------------------

Mat apply_map(const LinearMapRep& l, const Mat& x) {
    require_kraus(l, "apply_map");
    if (x.rows() != l.in_dim() || x.cols() != l.in_dim()) {
        throw DimensionMismatch("apply_map: argument is " + std::to_string(x.rows()) +
                                "x" + std::to_string(x.cols()) + ", map expects " +
                                std::to_string(l.in_dim()));
    }
    const Mat arg = l.pre_transpose ? x.transpose() : x;
    Mat out = Mat::Zero(l.out_dim(), l.out_dim());
    for (const Mat& k : l.kraus) out += k * arg * k.adjoint();
    return out;
}

BipartiteOperator apply_extended(const LinearMapRep& l,
                                 const BipartiteOperator& rho, ExtendSide side) {
    require_kraus(l, "apply_extended");
    const int acted = (side == ExtendSide::Right) ? rho.dim_b : rho.dim_a;
    if (acted != l.in_dim()) {
        throw DimensionMismatch("apply_extended: acted factor has dim " +
                                std::to_string(acted) + ", map expects " +
                                std::to_string(l.in_dim()));
    }
    // A ↦ Σ V Aᵀ V† applied block-wise transposes the acted factor only,
    // which is exactly the partial transpose of that factor.
    const Mat base = l.pre_transpose
        ? partial_transpose(rho, side == ExtendSide::Right ? Subsystem::B
                                                           : Subsystem::A).mat
        : rho.mat;
    int out_a = rho.dim_a, out_b = rho.dim_b;
    Mat out;
    if (side == ExtendSide::Right) {
        out_b = l.out_dim();
        const Mat id = Mat::Identity(rho.dim_a, rho.dim_a);
        out = Mat::Zero(static_cast<long>(out_a) * out_b,
                        static_cast<long>(out_a) * out_b);
        for (const Mat& k : l.kraus) {
            const Mat ext = kron(id, k);
            out += ext * base * ext.adjoint();
        }
    } else {
        out_a = l.out_dim();
        const Mat id = Mat::Identity(rho.dim_b, rho.dim_b);
        out = Mat::Zero(static_cast<long>(out_a) * out_b,
                        static_cast<long>(out_a) * out_b);
        for (const Mat& k : l.kraus) {
            const Mat ext = kron(k, id);
            out += ext * base * ext.adjoint();
        }
    }
    return BipartiteOperator(out_a, out_b, std::move(out));
}

BipartiteOperator jamiolkowski_operator(const LinearMapRep& l, int d) {
    require_kraus(l, "jamiolkowski_operator");
    if (d != l.in_dim()) {
        throw DimensionMismatch("jamiolkowski_operator: d = " + std::to_string(d) +
                                " but map input dim is " + std::to_string(l.in_dim()));
    }
    BipartiteOperator out = apply_extended(l, max_entangled(d), ExtendSide::Right);
    out.mat *= static_cast<double>(d);
    return out;
}

Mat OperatorMap::apply(const Mat& x) const {
    const int da = d_op.dim_a, db = d_op.dim_b;
    if (x.rows() != da || x.cols() != da) {
        throw DimensionMismatch("OperatorMap: argument dim " + std::to_string(x.rows()) +
                                " != " + std::to_string(da));
    }
    // out(m, n) = Σ_{a a'} X(a, a') D((a, m), (a', n))
    Mat out = Mat::Zero(db, db);
    for (int a = 0; a < da; ++a)
        for (int ap = 0; ap < da; ++ap) {
            const cxd w = x(a, ap);
            if (w == cxd(0.0, 0.0)) continue;
            out += w * d_op.mat.block(a * db, ap * db, db, db);
        }
    return out;
}

OperatorMap map_from_operator(const BipartiteOperator& d_op) {
    return OperatorMap{d_op};
}

LinearMapRep adjoint(const LinearMapRep& l) {
    require_kraus(l, "adjoint");
    LinearMapRep out;
    out.pre_transpose = l.pre_transpose;
    out.kraus.reserve(l.kraus.size());
    for (const Mat& k : l.kraus) {
        out.kraus.push_back(l.pre_transpose ? Mat(k.transpose()) : Mat(k.adjoint()));
    }
    return out;
}

// ------------------------ rank-2 constructions -----------------------------

LinearMapRep two_decomposable_from_vectors(const std::vector<PureVector>& psis) {
    if (psis.empty()) {
        throw BadParameter("two_decomposable_from_vectors: empty vector list");
    }
    const int da = psis[0].dim_a, db = psis[0].dim_b;
    LinearMapRep l;
    l.pre_transpose = true;
    for (const PureVector& psi : psis) {
        if (psi.dim_a != da || psi.dim_b != db) {
            throw DimensionMismatch("two_decomposable_from_vectors: mixed dims");
        }
        const SchmidtForm f = schmidt(psi);
        int r = 0;
        for (long k = 0; k < f.coefficients.size(); ++k)
            if (f.coefficients(k) > 1e-9) ++r;
        if (r > 2) {
            throw SchmidtRankTooHigh("two_decomposable_from_vectors: vector has "
                                     "Schmidt rank " + std::to_string(r));
        }
        // K = Σ_k c_k conj(b_k) a_k†  (rank <= 2 by construction).
        Mat k = Mat::Zero(db, da);
        for (int t = 0; t < r; ++t) {
            k += f.coefficients(t) *
                 (f.right_vectors.col(t).conjugate() * f.left_vectors.col(t).adjoint());
        }
        l.kraus.push_back(std::move(k));
    }
    return l;
}

Witness witness_from_vector(const PureVector& psi) {
    if (schmidt_rank(psi) > 2) {
        throw SchmidtRankTooHigh("witness_from_vector: vector has Schmidt rank > 2");
    }
    BipartiteOperator outer(psi.dim_a, psi.dim_b,
                            psi.amp * psi.amp.adjoint());
    Witness w;
    w.op = partial_transpose(outer, Subsystem::B);
    w.vectors = {psi};
    return w;
}

std::vector<PureVector> rank2_vectors_from_eigenvector(const LinearMapRep& l,
                                                       const PureVector& phi) {
    require_kraus(l, "rank2_vectors_from_eigenvector");
    if (!l.pre_transpose) {
        throw BadParameter("rank2_vectors_from_eigenvector: map must carry the "
                           "pre_transpose flag");
    }
    if (phi.dim_b != l.out_dim()) {
        throw DimensionMismatch("rank2_vectors_from_eigenvector: eigenvector B dim " +
                                std::to_string(phi.dim_b) + " != map output dim");
    }
    const Mat id = Mat::Identity(phi.dim_a, phi.dim_a);
    std::vector<PureVector> out;
    out.reserve(l.kraus.size());
    for (const Mat& k : l.kraus) {
        Vec cand = kron(id, Mat(k.adjoint())) * phi.amp;
        out.emplace_back(phi.dim_a, l.in_dim(), std::move(cand));
    }
    return out;
}

// ------------------------------ named maps ---------------------------------

std::vector<Vec> witness_family_vectors(NamedMapTag t, int d) {
    if (d < 2) throw BadDimension("witness_family_vectors: d must be >= 2");
    std::vector<Vec> fam;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            switch (t) {
                case NamedMapTag::Lambda1:
                    fam.push_back(basis_pair(d, i, j) - basis_pair(d, j, i));
                    break;
                case NamedMapTag::Lambda2:
                    fam.push_back(basis_pair(d, i, j) + basis_pair(d, j, i));
                    break;
                case NamedMapTag::Lambda3:
                    fam.push_back(basis_pair(d, i, i) + basis_pair(d, j, j));
                    break;
                case NamedMapTag::Lambda4:
                    fam.push_back(basis_pair(d, i, i) - basis_pair(d, j, j));
                    break;
                case NamedMapTag::Lambda5:
                    break;  // no explicit family; the map comes from D^{T_B}
            }
        }
    }
    return fam;
}

Mat family_projector_sum(NamedMapTag t, int d) {
    Mat sum = Mat::Zero(d * d, d * d);
    for (const Vec& v : witness_family_vectors(t, d)) {
        sum += v * v.adjoint();
    }
    return sum;
}

Mat named_map_action(NamedMapTag t, int d, const Mat& a) {
    if (a.rows() != d || a.cols() != d) {
        throw DimensionMismatch("named_map_action: argument dim mismatch");
    }
    const Mat id = Mat::Identity(d, d);
    switch (t) {
        case NamedMapTag::Lambda1: return a.trace() * id - a;
        case NamedMapTag::Lambda2: return a.trace() * id + a - 2.0 * diag_of(a);
        case NamedMapTag::Lambda3: return a.transpose() + double(d - 2) * diag_of(a);
        case NamedMapTag::Lambda4: return -a.transpose() + double(d) * diag_of(a);
        case NamedMapTag::Lambda5:
            return double(d - 2) * a.trace() * id +
                   double(2 * d - 1) * a.transpose();
    }
    throw BadParameter("named_map_action: unknown tag");
}

BipartiteOperator named_witness(NamedMapTag t, int d) {
    if (d < 2) throw BadDimension("named_witness: d must be >= 2");
    const Mat id = Mat::Identity(d * d, d * d);
    const Mat dplus = double(d) * max_entangled(d).mat;  // integer entries
    const Mat v = flip_operator(d).mat;
    const Mat z = diag_projector_z(d).mat;
    Mat w;
    switch (t) {
        case NamedMapTag::Lambda1: w = id - dplus; break;
        case NamedMapTag::Lambda2: w = id + dplus - 2.0 * z; break;
        case NamedMapTag::Lambda3: w = v + double(d - 2) * z; break;
        case NamedMapTag::Lambda4: w = -v + double(d) * z; break;
        case NamedMapTag::Lambda5: w = double(d - 2) * id + double(2 * d - 1) * v; break;
    }
    return BipartiteOperator(d, d, std::move(w));
}

NamedMap named_map(NamedMapTag t, int d) {
    NamedMap nm;
    nm.witness.form_tag = named_map_name(t);
    nm.witness.op = named_witness(t, d);

    nm.map.pre_transpose = true;
    if (t == NamedMapTag::Lambda5) {
        // Kraus family from the spectral decomposition of D^{T_B} >= 0.
        const BipartiteOperator wpt =
            partial_transpose(nm.witness.op, Subsystem::B);
        const auto [evals, evecs] = herm_eig(wpt.mat);
        for (long k = 0; k < evals.size(); ++k) {
            if (evals(k) <= 1e-12) continue;
            const Vec scaled = std::sqrt(evals(k)) * evecs.col(k);
            nm.map.kraus.push_back(kraus_from_pt_vector(scaled, d, d));
        }
    } else {
        for (const Vec& raw : witness_family_vectors(t, d)) {
            nm.map.kraus.push_back(kraus_from_pt_vector(raw, d, d));
        }
    }
    return nm;
}

// --------------------------- state-induced map ------------------------------

StateMapPair s_map_from_state(const DensityMatrix& rho) {
    if (rho.op.dim_a != rho.op.dim_b) {
        throw DimensionMismatch("s_map_from_state: state must live on d ⊗ d");
    }
    const int d = rho.op.dim_a;
    const auto [evals, evecs] = herm_eig(double(d) * rho.op.mat);

    StateMapPair out;
    out.s.pre_transpose = false;
    out.transpose_compose_s.pre_transpose = true;
    for (long k = 0; k < evals.size(); ++k) {
        if (evals(k) <= 1e-12) continue;
        const Vec scaled = std::sqrt(evals(k)) * evecs.col(k);
        // S has Kraus W with W(m, i) = scaled(i*d + m); transpose∘S takes conj(W).
        Mat w(d, d);
        for (int i = 0; i < d; ++i)
            for (int m = 0; m < d; ++m)
                w(m, i) = scaled(i * d + m);
        out.transpose_compose_s.kraus.push_back(w.conjugate());
        out.s.kraus.push_back(std::move(w));
    }
    if (out.s.kraus.empty()) {
        throw BadParameter("s_map_from_state: state has no spectrum above 1e-12");
    }
    return out;
}

// ------------------------------ k-positivity -------------------------------

Verdict is_k_positive(const LinearMapRep& l, int k, const SearchParams& p) {
    require_kraus(l, "is_k_positive");
    if (k < 1) throw BadParameter("is_k_positive: k must be >= 1");
    const BipartiteOperator choi = jamiolkowski_operator(l, l.in_dim());
    return rank_constrained_min(choi, k, p);
}

} // namespace qdistill
