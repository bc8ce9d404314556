#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ofdm/common.hpp"
#include "ofdm/fft.hpp"
#include "ofdm/profile.hpp"

namespace ofdm {

inline constexpr double db_floor = -200.0;  // serialization-friendly stand-in for -inf

inline double to_db(double power) {
    if (power <= 0.0) return db_floor;
    return std::max(10.0 * std::log10(power), db_floor);
}

enum class PsdWindow { Hann, Rect };

struct PsdReport {
    std::vector<double> freq_bins_hz;  // ascending, [-fs/2, fs/2)
    std::vector<double> power_db;
    std::size_t nfft = 0;
    std::size_t segments = 0;
};

/// Welch-averaged periodogram. Power is normalized so the bin powers sum to
/// the mean squared sample value; defaults are nfft 1024, 50% overlap, Hann.
inline PsdReport psd_welch(const IqBuffer& iq, std::size_t nfft = 1024, double overlap_fraction = 0.5,
                           PsdWindow window = PsdWindow::Hann) {
    if (nfft < 1) throw std::invalid_argument("psd_welch: nfft must be >= 1");
    if (iq.samples.size() < nfft)
        throw std::invalid_argument("psd_welch: buffer of " + std::to_string(iq.samples.size()) +
                                    " samples is shorter than nfft " + std::to_string(nfft));
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
        throw std::invalid_argument("psd_welch: overlap must be in [0, 1)");

    std::vector<double> w(nfft, 1.0);
    if (window == PsdWindow::Hann)
        for (std::size_t i = 0; i < nfft; ++i)
            w[i] = 0.5 * (1.0 - std::cos(two_pi * static_cast<double>(i) / static_cast<double>(nfft)));
    double w_energy = 0.0;
    for (double v : w) w_energy += v * v;

    const std::size_t hop = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(nfft) * (1.0 - overlap_fraction))));

    const FftPlan plan(nfft);
    std::vector<double> mean_psd(nfft, 0.0);
    ComplexVec seg(nfft);
    std::size_t count = 0;
    for (std::size_t start = 0; start + nfft <= iq.samples.size(); start += hop) {
        for (std::size_t i = 0; i < nfft; ++i) seg[i] = iq.samples[start + i] * w[i];
        const ComplexVec spec = plan.forward(seg);
        for (std::size_t k = 0; k < nfft; ++k) mean_psd[k] += std::norm(spec[k]);
        ++count;
    }
    const double scale = 1.0 / (static_cast<double>(count) * static_cast<double>(nfft) * w_energy);

    PsdReport report;
    report.nfft = nfft;
    report.segments = count;
    report.freq_bins_hz.resize(nfft);
    report.power_db.resize(nfft);
    const int k_lo = SubcarrierMap::k_min(nfft);
    for (std::size_t i = 0; i < nfft; ++i) {
        const int k = k_lo + static_cast<int>(i);
        report.freq_bins_hz[i] = iq.sample_rate_hz * static_cast<double>(k) / static_cast<double>(nfft);
        report.power_db[i] = to_db(mean_psd[SubcarrierMap::dft_bin(k, nfft)] * scale);
    }
    return report;
}

struct OccupancyReport {
    std::vector<int> logical_k;        // ascending logical index
    std::vector<double> power_dbc;     // mean bin power relative to the occupied mean
    std::vector<int> occupied_k;       // bins above the occupancy threshold
    double threshold_dbc = -30.0;
};

/// Mean per-bin power over symbol-aligned, prefix-stripped DFTs of a frame.
/// Verifies the subcarrier plan actually on air: a bin counts as occupied
/// when its mean power is within 30 dB of the strongest bin.
inline OccupancyReport occupancy_report(const IqBuffer& iq, const ValidatedProfile& vp) {
    const std::size_t n = vp.fft_size();
    const std::size_t cp = vp.cp_len();
    const std::size_t rolloff = vp.window_rolloff();
    const std::size_t len = iq.samples.size();
    if (len < rolloff || (len - rolloff) % (n + cp) != 0 || len == rolloff)
        throw std::invalid_argument("occupancy_report: buffer is not frame-aligned for this profile");
    const std::size_t total_syms = (len - rolloff) / (n + cp);

    const FftPlan plan(n);
    std::vector<double> mean(n, 0.0);
    for (std::size_t s = 0; s < total_syms; ++s) {
        const std::span<const cplx> core(iq.samples.data() + s * (n + cp) + cp, n);
        const ComplexVec bins = plan.forward(core);
        for (std::size_t k = 0; k < n; ++k) mean[k] += std::norm(bins[k]);
    }
    for (auto& v : mean) v /= static_cast<double>(total_syms);

    OccupancyReport report;
    const double peak = *std::max_element(mean.begin(), mean.end());
    const double threshold = peak * std::pow(10.0, report.threshold_dbc / 10.0);

    double occupied_acc = 0.0;
    std::size_t occupied_count = 0;
    const int k_lo = SubcarrierMap::k_min(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = mean[SubcarrierMap::dft_bin(k_lo + static_cast<int>(i), n)];
        if (peak > 0.0 && p > threshold) {
            occupied_acc += p;
            ++occupied_count;
        }
    }
    const double reference = occupied_count ? occupied_acc / static_cast<double>(occupied_count) : 1.0;

    report.logical_k.resize(n);
    report.power_dbc.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int k = k_lo + static_cast<int>(i);
        const double p = mean[SubcarrierMap::dft_bin(k, n)];
        report.logical_k[i] = k;
        report.power_dbc[i] = to_db(p / reference);
        if (peak > 0.0 && p > threshold) report.occupied_k.push_back(k);
    }
    return report;
}

struct PaprReport {
    double overall_db = 0.0;
    std::vector<double> per_window_db;
};

/// Peak-to-average power ratio, 10 log10(max|x|^2 / mean|x|^2), over the
/// whole buffer and per window of window_len samples (0 = single window).
inline PaprReport papr(const IqBuffer& iq, std::size_t window_len = 0) {
    if (iq.empty()) throw std::invalid_argument("papr: empty buffer");
    if (window_len == 0 || window_len > iq.samples.size()) window_len = iq.samples.size();

    PaprReport report;
    auto papr_of = [](std::span<const cplx> x) {
        double peak = 0.0, acc = 0.0;
        for (const auto& v : x) {
            const double p = std::norm(v);
            peak = std::max(peak, p);
            acc += p;
        }
        const double mean = acc / static_cast<double>(x.size());
        return mean > 0.0 ? 10.0 * std::log10(peak / mean) : 0.0;
    };
    report.overall_db = papr_of(iq.samples);
    for (std::size_t start = 0; start + window_len <= iq.samples.size(); start += window_len)
        report.per_window_db.push_back(papr_of(std::span<const cplx>(iq.samples.data() + start, window_len)));
    return report;
}

/// Window length given in OFDM symbols of the originating profile.
inline PaprReport papr(const IqBuffer& iq, const ValidatedProfile& vp, std::size_t window_symbols) {
    return papr(iq, window_symbols * vp.symbol_len());
}

}  // namespace ofdm
