#pragma once

#include <cmath>
#include <vector>

#include "ofdm/common.hpp"

namespace ofdm {

/// Half-cosine edge ramp of `rolloff` samples, w[i] = 0.5 (1 - cos(pi (i+0.5)/rolloff)).
/// Complementary edges sum to one, so overlap-added symbol junctions keep
/// steady-state amplitude. rolloff 0 gives an empty (rectangular) edge.
inline std::vector<double> raised_cosine_taper(std::size_t rolloff) {
    std::vector<double> w(rolloff);
    for (std::size_t i = 0; i < rolloff; ++i)
        w[i] = 0.5 * (1.0 - std::cos(pi * (static_cast<double>(i) + 0.5) / static_cast<double>(rolloff)));
    return w;
}

}  // namespace ofdm
