#pragma once

#include <cstdint>
#include <span>

#include "ofdm/common.hpp"
#include "ofdm/constellation.hpp"
#include "ofdm/fft.hpp"
#include "ofdm/lfsr.hpp"
#include "ofdm/profile.hpp"
#include "ofdm/window.hpp"

namespace ofdm {

/// Length-N frequency-domain symbol in DFT bin order. Null and Dc bins are
/// exactly zero.
struct FreqSymbol {
    ComplexVec bins;
    std::uint32_t index = 0;  // position within the frame
};

/// Maps a bit stream onto one constellation, MSB-first per symbol label.
inline std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, Constellation kind) {
    const unsigned bps = kind.bits();
    if (bits.size() % bps != 0)
        throw std::invalid_argument("map_bits: bit count " + std::to_string(bits.size()) +
                                    " is not divisible by " + std::to_string(bps));
    std::vector<cplx> out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        std::uint32_t label = 0;
        for (unsigned b = 0; b < bps; ++b) label = (label << 1) | (bits[i + b] & 1u);
        out.push_back(kind.map(label));
    }
    return out;
}

/// Pilot polarity multipliers for symbol indices 0..count-1: the profile
/// scrambler sequence advanced once per symbol, 0 -> +1, 1 -> -1. Profiles
/// without a scrambler get constant +1.
inline std::vector<double> pilot_polarity(const ValidatedProfile& vp, std::size_t count) {
    std::vector<double> out(count, 1.0);
    if (vp.scrambler()) {
        Lfsr gen(*vp.scrambler());
        for (auto& v : out) v = gen.next() ? -1.0 : 1.0;
    }
    return out;
}

namespace detail {

inline FreqSymbol assemble_with_polarity(std::span<const cplx> data_syms, const ValidatedProfile& vp,
                                         std::uint32_t symbol_index, double polarity) {
    if (data_syms.size() != vp.data_bins().size())
        throw std::invalid_argument("assemble_symbol: got " + std::to_string(data_syms.size()) +
                                    " data symbols, profile has " +
                                    std::to_string(vp.data_bins().size()) + " data bins");
    FreqSymbol sym;
    sym.index = symbol_index;
    sym.bins.assign(vp.fft_size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < data_syms.size(); ++i) sym.bins[vp.data_bins()[i]] = data_syms[i];
    for (std::size_t i = 0; i < vp.pilot_bins().size(); ++i)
        sym.bins[vp.pilot_bins()[i]] = vp.pilot_values()[i] * polarity;
    return sym;
}

}  // namespace detail

/// Places data symbols at the data bins in ascending logical order and the
/// polarity-scaled pilot values at the pilot bins; Null and Dc stay zero.
inline FreqSymbol assemble_symbol(std::span<const cplx> data_syms, const ValidatedProfile& vp,
                                  std::uint32_t symbol_index) {
    const auto polarity = pilot_polarity(vp, static_cast<std::size_t>(symbol_index) + 1);
    return detail::assemble_with_polarity(data_syms, vp, symbol_index, polarity.back());
}

/// Prepends the last cp_len samples: [tail | symbol], length N + cp_len.
inline ComplexVec add_cyclic_prefix(std::span<const cplx> symbol, std::size_t cp_len) {
    if (cp_len >= symbol.size())
        throw std::invalid_argument("add_cyclic_prefix: cp_len " + std::to_string(cp_len) +
                                    " must be < symbol length " + std::to_string(symbol.size()));
    ComplexVec out;
    out.reserve(symbol.size() + cp_len);
    out.insert(out.end(), symbol.end() - static_cast<std::ptrdiff_t>(cp_len), symbol.end());
    out.insert(out.end(), symbol.begin(), symbol.end());
    return out;
}

/// Mirrors the positive-frequency bins onto the negative-frequency half,
/// X[N-k] = conj(X[k]), so the inverse transform is real. Requires every
/// negative-logical bin to be empty and a real DC bin.
inline FreqSymbol hermitian_extend(const FreqSymbol& sym) {
    const std::size_t n = sym.bins.size();
    FreqSymbol out = sym;
    if (sym.bins[0].imag() != 0.0)
        throw std::invalid_argument("hermitian_extend: DC bin must be real");
    // negative logical k = -1..-ceil(N/2) live in DFT bins N-1 down to ceil(N/2)
    for (std::size_t k = (n + 1) / 2; k < n; ++k) {
        if (sym.bins[k] != cplx{0.0, 0.0})
            throw std::invalid_argument("hermitian_extend: negative-frequency bins must be empty");
    }
    for (std::size_t k = 1; k <= (n - 1) / 2; ++k) out.bins[n - k] = std::conj(sym.bins[k]);
    return out;
}

/// Default data source: PRBS bits from the profile scrambler polynomial (or
/// x^7+x^4+1 when the profile has none), with the register seeded from the
/// 64-bit run seed, mapped into [1, 2^w - 1].
inline std::vector<std::uint8_t> prbs_bits(const ValidatedProfile& vp, std::uint64_t seed,
                                           std::size_t count) {
    ScramblerSpec spec = vp.scrambler() ? *vp.scrambler() : default_prbs_spec();
    const std::uint32_t period = (std::uint32_t{1} << spec.width) - 1;
    spec.seed = static_cast<std::uint32_t>(seed % period) + 1;
    return lfsr_bits(spec, count);
}

/// Known training values for the reference symbol, in DFT bin order: every
/// data and pilot bin carries a +-1 value from a fixed x^7+x^4+1 all-ones
/// sequence walked over the occupied bins in ascending logical order.
inline ComplexVec reference_symbol_bins(const ValidatedProfile& vp) {
    ComplexVec bins(vp.fft_size(), cplx{0.0, 0.0});
    Lfsr gen(default_prbs_spec());
    const std::size_t n = vp.fft_size();
    const int k_lo = SubcarrierMap::k_min(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Role r = vp.profile().map.roles[i];
        if (r != Role::Data && r != Role::Pilot) continue;
        const std::uint32_t bin = SubcarrierMap::dft_bin(k_lo + static_cast<int>(i), n);
        bins[bin] = gen.next() ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
    }
    return bins;
}

namespace detail {

// Scrambles in place when the profile carries a scrambler; no-op otherwise.
inline void scramble_bits(const ValidatedProfile& vp, std::vector<std::uint8_t>& bits) {
    if (!vp.scrambler()) return;
    Lfsr gen(*vp.scrambler());
    for (auto& b : bits) b ^= gen.next();
}

// Mapped data-bin points for symbol s, consuming bits in ascending
// logical-bin order, MSB first.
inline std::vector<cplx> map_symbol_bits(const ValidatedProfile& vp,
                                         std::span<const std::uint8_t> bits, std::size_t& pos) {
    std::vector<cplx> points(vp.data_bins().size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Constellation kind = vp.data_kinds()[i];
        std::uint32_t label = 0;
        for (unsigned b = 0; b < kind.bits(); ++b) label = (label << 1) | (bits[pos++] & 1u);
        points[i] = kind.map(label);
    }
    return points;
}

}  // namespace detail

/// The scrambled, constellation-mapped data-bin points per symbol — the
/// transmit-side reference a receiver's error vectors are measured against.
inline std::vector<std::vector<cplx>> mapped_data_points(const ValidatedProfile& vp,
                                                         std::span<const std::uint8_t> bits,
                                                         std::size_t n_symbols) {
    const std::size_t need = n_symbols * vp.bits_per_symbol();
    if (bits.size() < need)
        throw std::invalid_argument("mapped_data_points: need " + std::to_string(need) + " bits, got " +
                                    std::to_string(bits.size()));
    std::vector<std::uint8_t> scrambled(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(need));
    detail::scramble_bits(vp, scrambled);
    std::vector<std::vector<cplx>> out;
    out.reserve(n_symbols);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < n_symbols; ++s) out.push_back(detail::map_symbol_bits(vp, scrambled, pos));
    return out;
}

/// The modulation pipeline: scramble -> map -> assemble -> inverse DFT ->
/// cyclic prefix -> edge taper with overlap-add -> concatenate. One code
/// path for every profile; nothing here depends on which standard the
/// parameters describe.
///
/// Emits (n_symbols + ref) * (N + cp_len) samples, plus a window_rolloff
/// tail when the taper is active: each symbol is extended by a rolloff-long
/// cyclic suffix and crossfaded with its neighbour over the first rolloff
/// samples of the prefix (which is why 2*rolloff must fit inside cp_len).
inline IqBuffer generate_frame(const ValidatedProfile& vp, std::span<const std::uint8_t> bits,
                               std::size_t n_symbols) {
    if (n_symbols < 1) throw std::invalid_argument("generate_frame: n_symbols must be >= 1");
    const std::size_t need = n_symbols * vp.bits_per_symbol();
    if (bits.size() < need)
        throw std::invalid_argument("generate_frame: need " + std::to_string(need) + " bits, got " +
                                    std::to_string(bits.size()));

    std::vector<std::uint8_t> payload(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(need));
    detail::scramble_bits(vp, payload);

    const std::size_t n = vp.fft_size();
    const std::size_t cp = vp.cp_len();
    const std::size_t rolloff = vp.window_rolloff();
    const bool ref = vp.reference_symbol();
    const std::size_t total_syms = n_symbols + (ref ? 1 : 0);

    const FftPlan plan(n);
    const auto polarity = pilot_polarity(vp, total_syms);
    const auto taper = raised_cosine_taper(rolloff);

    IqBuffer out;
    out.sample_rate_hz = vp.sample_rate_hz();
    out.profile = vp.profile().name;
    out.samples.assign(total_syms * (n + cp) + rolloff, cplx{0.0, 0.0});

    std::size_t bit_pos = 0;
    for (std::size_t s = 0; s < total_syms; ++s) {
        FreqSymbol sym;
        if (ref && s == 0) {
            sym.bins = reference_symbol_bins(vp);
            sym.index = 0;
        } else {
            const auto points = detail::map_symbol_bits(vp, payload, bit_pos);
            sym = detail::assemble_with_polarity(points, vp, static_cast<std::uint32_t>(s), polarity[s]);
        }
        const ComplexVec core = plan.inverse(sym.bins);

        // extended symbol: [cp-sample prefix | core | rolloff-sample suffix]
        const std::size_t base = s * (n + cp);
        auto emit = [&](std::size_t offset, cplx v) {
            if (rolloff > 0) {
                if (offset < rolloff) v *= taper[offset];
                const std::size_t ext_len = n + cp + rolloff;
                if (offset >= ext_len - rolloff) v *= taper[ext_len - 1 - offset];
            }
            out.samples[base + offset] += v;
        };
        for (std::size_t i = 0; i < cp; ++i) emit(i, core[n - cp + i]);
        for (std::size_t i = 0; i < n; ++i) emit(cp + i, core[i]);
        for (std::size_t i = 0; i < rolloff; ++i) emit(cp + n + i, core[i]);
    }
    return out;
}

/// Seed-only entry point: data bits come from the profile PRBS.
inline IqBuffer generate_frame(const ValidatedProfile& vp, std::uint64_t seed, std::size_t n_symbols) {
    const auto bits = prbs_bits(vp, seed, n_symbols * vp.bits_per_symbol());
    return generate_frame(vp, bits, n_symbols);
}

}  // namespace ofdm
