#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

#include "ofdm/common.hpp"
#include "ofdm/fft.hpp"
#include "ofdm/modulator.hpp"
#include "ofdm/profile.hpp"

namespace ofdm {

struct DemodOptions {
    bool equalize = false;  // per-bin gain from the reference symbol
};

struct DemodResult {
    std::vector<std::uint8_t> bits;
    std::vector<std::vector<cplx>> points;  // pre-decision data-bin points per symbol
};

/// Frame-aligned reference demodulator. Per symbol: strip the prefix, DFT,
/// optional per-bin equalization against the reference symbol, pilot
/// common-phase correction, nearest-point decisions, descramble. No timing
/// or frequency synchronization is attempted; the input must start exactly
/// on a frame boundary.
inline DemodResult demodulate(const IqBuffer& iq, const ValidatedProfile& vp, DemodOptions opt = {}) {
    const std::size_t n = vp.fft_size();
    const std::size_t cp = vp.cp_len();
    const std::size_t rolloff = vp.window_rolloff();
    const bool ref = vp.reference_symbol();

    const std::size_t len = iq.samples.size();
    if (len < rolloff || (len - rolloff) % (n + cp) != 0)
        throw std::invalid_argument("demodulate: buffer of " + std::to_string(len) +
                                    " samples is not a whole number of " + std::to_string(n + cp) +
                                    "-sample symbols (plus " + std::to_string(rolloff) + " tail)");
    const std::size_t total_syms = (len - rolloff) / (n + cp);
    if (total_syms < 1 + (ref ? 1 : 0))
        throw std::invalid_argument("demodulate: buffer too short for this profile");
    if (opt.equalize && !ref)
        throw std::invalid_argument("demodulate: equalization requires a profile with a reference symbol");

    const FftPlan plan(n);
    const auto polarity = pilot_polarity(vp, total_syms);

    auto symbol_bins = [&](std::size_t s) {
        const std::span<const cplx> core(iq.samples.data() + s * (n + cp) + cp, n);
        return plan.forward(core);
    };

    // single complex gain per occupied bin, from the reference symbol
    ComplexVec gain(n, cplx{1.0, 0.0});
    if (opt.equalize) {
        const ComplexVec known = reference_symbol_bins(vp);
        const ComplexVec rx = symbol_bins(0);
        for (std::size_t b = 0; b < n; ++b)
            if (known[b] != cplx{0.0, 0.0}) gain[b] = rx[b] / known[b];
    }

    const std::size_t n_data_syms = total_syms - (ref ? 1 : 0);
    DemodResult result;
    result.points.reserve(n_data_syms);
    result.bits.reserve(n_data_syms * vp.bits_per_symbol());

    for (std::size_t s = (ref ? 1 : 0); s < total_syms; ++s) {
        ComplexVec bins = symbol_bins(s);
        if (opt.equalize)
            for (std::size_t b = 0; b < n; ++b) bins[b] /= gain[b];

        if (!vp.pilot_bins().empty()) {
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < vp.pilot_bins().size(); ++i)
                acc += bins[vp.pilot_bins()[i]] * std::conj(vp.pilot_values()[i] * polarity[s]);
            if (acc != cplx{0.0, 0.0}) {
                const cplx derot = std::conj(acc) / std::abs(acc);
                for (std::uint32_t b : vp.data_bins()) bins[b] *= derot;
            }
        }

        std::vector<cplx> points(vp.data_bins().size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            points[i] = bins[vp.data_bins()[i]];
            const Constellation kind = vp.data_kinds()[i];
            const std::uint32_t label = kind.demap(points[i]);
            for (unsigned b = kind.bits(); b-- > 0;)
                result.bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
        }
        result.points.push_back(std::move(points));
    }

    detail::scramble_bits(vp, result.bits);  // descramble: XOR with the same stream
    return result;
}

struct EvmReport {
    double rms_percent = 0.0;
    double rms_db = 0.0;                     // clamped at the -100 dB floor
    std::vector<double> per_symbol_percent;
};

/// RMS error vector magnitude: sqrt(mean|rx - ref|^2 / mean|ref|^2).
inline EvmReport measure_evm(const std::vector<std::vector<cplx>>& ref,
                             const std::vector<std::vector<cplx>>& rx) {
    if (ref.size() != rx.size())
        throw std::invalid_argument("measure_evm: symbol counts differ (" + std::to_string(ref.size()) +
                                    " vs " + std::to_string(rx.size()) + ")");
    double err_acc = 0.0, ref_acc = 0.0;
    std::size_t total = 0;
    EvmReport report;
    report.per_symbol_percent.reserve(ref.size());
    for (std::size_t s = 0; s < ref.size(); ++s) {
        if (ref[s].size() != rx[s].size())
            throw std::invalid_argument("measure_evm: point counts differ in symbol " + std::to_string(s));
        double e = 0.0, r = 0.0;
        for (std::size_t i = 0; i < ref[s].size(); ++i) {
            e += std::norm(rx[s][i] - ref[s][i]);
            r += std::norm(ref[s][i]);
        }
        err_acc += e;
        ref_acc += r;
        total += ref[s].size();
        report.per_symbol_percent.push_back(r > 0.0 ? 100.0 * std::sqrt(e / r) : 0.0);
    }
    if (total == 0 || ref_acc <= 0.0) throw std::invalid_argument("measure_evm: zero reference power");
    const double rms = std::sqrt(err_acc / ref_acc);
    report.rms_percent = 100.0 * rms;
    report.rms_db = std::max(20.0 * std::log10(rms), -100.0);
    return report;
}

/// Flat-vector convenience overload.
inline EvmReport measure_evm(std::span<const cplx> ref, std::span<const cplx> rx) {
    return measure_evm(std::vector<std::vector<cplx>>{{ref.begin(), ref.end()}},
                       std::vector<std::vector<cplx>>{{rx.begin(), rx.end()}});
}

struct BerReport {
    std::size_t errors = 0;
    std::size_t total = 0;
    double ber = 0.0;
};

inline BerReport measure_ber(std::span<const std::uint8_t> tx_bits,
                             std::span<const std::uint8_t> rx_bits) {
    if (tx_bits.size() != rx_bits.size())
        throw std::invalid_argument("measure_ber: lengths differ (" + std::to_string(tx_bits.size()) +
                                    " vs " + std::to_string(rx_bits.size()) + ")");
    BerReport report;
    report.total = tx_bits.size();
    for (std::size_t i = 0; i < tx_bits.size(); ++i)
        if ((tx_bits[i] & 1u) != (rx_bits[i] & 1u)) ++report.errors;
    report.ber = report.total ? static_cast<double>(report.errors) / static_cast<double>(report.total) : 0.0;
    return report;
}

}  // namespace ofdm
