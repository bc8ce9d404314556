#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ofdm {

/// Fibonacci LFSR description: feedback polynomial x^t1 + x^t2 + ... + 1
/// given by its tap exponents, register width (== highest tap) and the
/// initial register contents. Bit p-1 of `seed` holds the state value that
/// sits p steps back in the sequence.
struct ScramblerSpec {
    std::vector<unsigned> taps;
    unsigned width = 0;        // 0 means "use the highest tap"
    std::uint32_t seed = 0;

    bool operator==(const ScramblerSpec&) const = default;
};

/// The x^7 + x^4 + 1 generator with an all-ones register.
inline ScramblerSpec default_prbs_spec() { return ScramblerSpec{{7, 4}, 7, 0x7f}; }

class Lfsr {
public:
    explicit Lfsr(const ScramblerSpec& spec) {
        if (spec.taps.empty()) throw std::invalid_argument("lfsr: no feedback taps");
        unsigned max_tap = 0;
        for (unsigned t : spec.taps) {
            if (t == 0) throw std::invalid_argument("lfsr: tap exponent must be >= 1");
            max_tap = std::max(max_tap, t);
        }
        const unsigned width = spec.width == 0 ? max_tap : spec.width;
        if (width > 31) throw std::invalid_argument("lfsr: register width above 31 unsupported");
        if (max_tap != width)
            throw std::invalid_argument("lfsr: register width must equal the highest tap");
        reg_mask_ = (std::uint32_t{1} << width) - 1;
        if (spec.seed == 0) throw std::invalid_argument("lfsr: all-zero seed is degenerate");
        if (spec.seed > reg_mask_)
            throw std::invalid_argument("lfsr: seed does not fit the register width");
        tap_mask_ = 0;
        for (unsigned t : spec.taps) tap_mask_ |= std::uint32_t{1} << (t - 1);
        state_ = spec.seed;
    }

    std::uint8_t next() {
        const std::uint32_t fb = std::popcount(state_ & tap_mask_) & 1u;
        state_ = ((state_ << 1) | fb) & reg_mask_;
        return static_cast<std::uint8_t>(fb);
    }

    std::uint32_t state() const { return state_; }

private:
    std::uint32_t state_ = 0;
    std::uint32_t tap_mask_ = 0;
    std::uint32_t reg_mask_ = 0;
};

inline std::vector<std::uint8_t> lfsr_bits(const ScramblerSpec& spec, std::size_t count) {
    Lfsr gen(spec);
    std::vector<std::uint8_t> out(count);
    for (auto& b : out) b = gen.next();
    return out;
}

}  // namespace ofdm
