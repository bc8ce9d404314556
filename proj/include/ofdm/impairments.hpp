#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <variant>

#include "ofdm/common.hpp"
#include "ofdm/noise.hpp"

namespace ofdm {

/// Adds complex white Gaussian noise at the requested SNR, measured against
/// the buffer's own mean power. snr_db = +inf is the identity.
inline IqBuffer awgn(const IqBuffer& iq, double snr_db, std::uint64_t seed) {
    if (iq.empty()) throw std::invalid_argument("awgn: empty buffer");
    if (std::isinf(snr_db) && snr_db > 0) return iq;
    const double noise_power = mean_power(iq.samples) * std::pow(10.0, -snr_db / 10.0);
    const double amp = std::sqrt(noise_power);
    const ComplexVec noise = gaussian_pairs(seed, iq.samples.size());
    IqBuffer out = iq;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += amp * noise[i];
    return out;
}

/// Carrier frequency offset: y[n] = x[n] exp(j 2 pi offset_hz n / fs).
inline IqBuffer cfo(const IqBuffer& iq, double offset_hz) {
    if (offset_hz == 0.0) return iq;
    IqBuffer out = iq;
    const double step = two_pi * offset_hz / iq.sample_rate_hz;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] *= std::polar(1.0, step * static_cast<double>(i));
    return out;
}

/// Receiver gain/phase mismatch between the I and Q branches:
///   y = alpha x + beta conj(x),  g = 10^(gain_db/20), phi in radians,
///   alpha = (1 + g e^{j phi}) / 2,  beta = (1 - g e^{-j phi}) / 2.
/// This keeps the I branch untouched and gives the Q branch gain g and
/// phase skew phi; a pure tone picks up an image at -f with level
/// 20 log10(|beta|/|alpha|) dB.
inline IqBuffer iq_imbalance(const IqBuffer& iq, double gain_db, double phase_deg) {
    if (gain_db == 0.0 && phase_deg == 0.0) return iq;
    const double g = std::pow(10.0, gain_db / 20.0);
    const double phi = phase_deg * pi / 180.0;
    const cplx alpha = (cplx{1.0, 0.0} + g * std::polar(1.0, phi)) * 0.5;
    const cplx beta = (cplx{1.0, 0.0} - g * std::polar(1.0, -phi)) * 0.5;
    IqBuffer out = iq;
    for (auto& v : out.samples) v = alpha * v + beta * std::conj(v);
    return out;
}

/// Rapp solid-state amplifier model, AM/AM only:
///   y = x / (1 + (|x|/vsat)^(2p))^(1/(2p)); phase is preserved.
inline IqBuffer pa_rapp(const IqBuffer& iq, double smoothness_p, double input_saturation) {
    if (!(smoothness_p > 0.0)) throw std::invalid_argument("pa_rapp: smoothness p must be > 0");
    if (!(input_saturation > 0.0)) throw std::invalid_argument("pa_rapp: saturation must be > 0");
    if (std::isinf(input_saturation)) return iq;
    IqBuffer out = iq;
    for (auto& v : out.samples) {
        const double r = std::abs(v);
        if (r == 0.0) continue;
        v /= std::pow(1.0 + std::pow(r / input_saturation, 2.0 * smoothness_p), 1.0 / (2.0 * smoothness_p));
    }
    return out;
}

/// Causal FIR channel, zero initial state, output truncated to the input
/// length (the filter's group delay is not compensated):
///   y[n] = sum_k taps[k] x[n-k].
inline IqBuffer fir(const IqBuffer& iq, std::span<const cplx> taps) {
    if (taps.empty()) throw std::invalid_argument("fir: empty tap list");
    IqBuffer out = iq;
    for (std::size_t n = out.samples.size(); n-- > 0;) {
        cplx acc{0.0, 0.0};
        const std::size_t kmax = std::min(taps.size() - 1, n);
        for (std::size_t k = 0; k <= kmax; ++k) acc += taps[k] * iq.samples[n - k];
        out.samples[n] = acc;
    }
    return out;
}

struct AwgnStage {
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
};
struct CfoStage {
    double offset_hz = 0.0;
};
struct IqImbalanceStage {
    double gain_db = 0.0;
    double phase_deg = 0.0;
};
struct PaRappStage {
    double smoothness_p = 2.0;
    double input_saturation = 1.0;
};
struct FirStage {
    std::vector<cplx> taps;
};

using ImpairmentStage = std::variant<AwgnStage, CfoStage, IqImbalanceStage, PaRappStage, FirStage>;

/// Ordered list of analog-domain distortions. An empty chain is the identity.
struct ImpairmentConfig {
    std::vector<ImpairmentStage> stages;
};

inline IqBuffer apply_stage(const IqBuffer& iq, const ImpairmentStage& stage) {
    return std::visit(
        [&iq](const auto& s) -> IqBuffer {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AwgnStage>) return awgn(iq, s.snr_db, s.seed);
            if constexpr (std::is_same_v<T, CfoStage>) return cfo(iq, s.offset_hz);
            if constexpr (std::is_same_v<T, IqImbalanceStage>) return iq_imbalance(iq, s.gain_db, s.phase_deg);
            if constexpr (std::is_same_v<T, PaRappStage>) return pa_rapp(iq, s.smoothness_p, s.input_saturation);
            if constexpr (std::is_same_v<T, FirStage>) return fir(iq, s.taps);
        },
        stage);
}

inline IqBuffer apply_chain(const IqBuffer& iq, const ImpairmentConfig& config) {
    IqBuffer out = iq;
    for (const auto& stage : config.stages) out = apply_stage(out, stage);
    return out;
}

}  // namespace ofdm
