#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ofdm/common.hpp"

namespace ofdm {

/// Deterministic stream of i.i.d. CN(0,1) samples (each component N(0, 1/2)).
/// Box-Muller over a mt19937_64 stream; hand-rolled so the output is
/// bit-reproducible across standard library implementations.
inline ComplexVec gaussian_pairs(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    auto u01 = [&rng] {
        // uniform on (0, 1]; never zero, so log() stays finite
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    };
    ComplexVec out(count);
    for (auto& z : out) {
        const double r = std::sqrt(-std::log(u01()));
        const double theta = two_pi * u01();
        z = std::polar(r, theta);
    }
    return out;
}

}  // namespace ofdm
