// search.hpp — Minimization of <psi| M |psi> over unit vectors of bounded
// Schmidt rank, by alternating subspace compression with exact eigensolver
// inner steps and seeded random restarts.
//
// A ViolationFound verdict is a certificate: the vector is stored, its
// Schmidt rank is checked against the bound, and the quadratic form is
// re-evaluated directly.  NoViolationFound is heuristic — the search is
// restart-limited and proves nothing.

#pragma once

#include <cstdint>
#include <optional>

#include "qdistill/core.hpp"

namespace qdistill {

struct SearchParams {
    int restarts = 64;
    int max_iters = 200;
    double conv_tol = 1e-10;   // stop when one sweep improves less than this
    double neg_tol = 1e-9;     // violation threshold on the certified value
    std::uint64_t seed = 1;

    // Restart r draws from the child stream mix_seed(seed, r), so enlarging
    // the restart budget keeps earlier restarts identical.
    void validate() const;     // throws BadParameter
};

enum class VerdictKind { ViolationFound, NoViolationFound };

struct Verdict {
    VerdictKind kind = VerdictKind::NoViolationFound;
    double value = 0.0;                    // best quadratic form found
    std::optional<PureVector> certificate; // present iff ViolationFound
    int schmidt_bound = 2;                 // the rank constraint used
    int copies = 1;                        // filled in by the copy-level API
    bool near_zero_warning = false;        // value in [-neg_tol, 0)
    SearchParams params;
};

// Minimize <psi|M|psi> over unit vectors with Schmidt rank <= k across the
// A|B cut of M.  M must be Hermitian within 1e-9 (NotHermitian otherwise).
// When k >= min(dim_a, dim_b) the constraint is vacuous and the global
// minimal eigenpair is returned directly.
//
// Restart results are reduced in restart order: strictly smaller value wins,
// ties within 1e-14 go to the lower restart index, so the outcome does not
// depend on scheduling.  The restart loop runs on up to QDISTILL_THREADS
// threads (default: hardware concurrency).
Verdict rank_constrained_min(const BipartiteOperator& m, int k,
                             const SearchParams& p);

} // namespace qdistill
