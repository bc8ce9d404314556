#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofdm {

using cplx = std::complex<double>;
using ComplexVec = std::vector<cplx>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

/// Complex baseband sample stream plus the metadata every consumer needs.
struct IqBuffer {
    ComplexVec samples;
    double sample_rate_hz = 0.0;
    std::string profile;  // origin profile name, empty if not profile-derived

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

inline double mean_power(const ComplexVec& x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : x) acc += std::norm(s);
    return acc / static_cast<double>(x.size());
}

}  // namespace ofdm
