// rng.hpp — Seedable random streams with deterministic child-stream splitting.
//
// The generator is std::mt19937_64 (its output sequence is pinned by the
// standard), and the normal variates are produced by an explicit Box-Muller
// transform on uniform draws, so a given seed yields the same stream on any
// conforming platform.  Child streams are derived as
//     child_seed = splitmix64(master ^ golden * (index + 1))
// which keeps parallel restarts independent of scheduling order.

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qdistill {

// splitmix64 finalizer combined with the golden-ratio constant.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Independent sub-stream; deterministic in (seed, index) only.
    RandomStream child(std::uint64_t index) const {
        return RandomStream(mix_seed(seed_, index));
    }

    double uniform();                          // (0, 1]
    double gaussian();                         // N(0, 1)
    std::complex<double> gaussian_complex();   // independent N(0,1) re/im

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace qdistill
