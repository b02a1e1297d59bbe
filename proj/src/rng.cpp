// rng.cpp — splitmix64 seed mixing and Box-Muller normal variates.

#include "qdistill/rng.hpp"

#include <cmath>
#include <numbers>

namespace qdistill {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RandomStream::uniform() {
    // 53-bit mantissa, shifted into (0, 1] so log() below is always finite.
    const std::uint64_t bits = gen_() >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RandomStream::gaussian_complex() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * std::numbers::pi * u2),
            r * std::sin(2.0 * std::numbers::pi * u2)};
}

} // namespace qdistill
