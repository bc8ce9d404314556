#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ofdm/common.hpp"

namespace ofdm {

/// Gray-coded constellation with unit mean symbol energy. Supported kinds:
/// BPSK (1 bit) and square QAM with an even number of bits up to 14
/// (QPSK == QAM4, QAM16, QAM64, ..., QAM16384).
///
/// Bit conventions: labels are consumed MSB-first from the bit stream. The
/// first half of the bits selects the I level, the second half the Q level;
/// each half is a Gray code over the amplitude levels with the top bit
/// giving the sign (1 -> positive). BPSK: 0 -> -1, 1 -> +1.
class Constellation {
public:
    static constexpr unsigned max_bits = 14;

    static Constellation bpsk() { return Constellation(1); }
    static Constellation qpsk() { return Constellation(2); }
    static Constellation qam16() { return Constellation(4); }
    static Constellation qam64() { return Constellation(6); }

    static Constellation qam(unsigned bits_per_symbol) {
        if (bits_per_symbol < 2 || bits_per_symbol > max_bits || bits_per_symbol % 2 != 0)
            throw std::invalid_argument("constellation: QAM order must have an even bit count in [2, 14]");
        return Constellation(bits_per_symbol);
    }

    unsigned bits() const { return bits_; }
    std::uint32_t points() const { return std::uint32_t{1} << bits_; }

    /// Label -> complex point, unit mean energy over all labels.
    cplx map(std::uint32_t label) const {
        if (bits_ == 1) return cplx{label & 1u ? 1.0 : -1.0, 0.0};
        const unsigned m = bits_ / 2;
        const std::uint32_t levels = std::uint32_t{1} << m;
        const std::uint32_t gi = label >> m;
        const std::uint32_t gq = label & (levels - 1);
        const double s = scale();
        return cplx{level_of(gray_decode(gi), levels) * s, level_of(gray_decode(gq), levels) * s};
    }

    /// Nearest-point hard decision, inverse of map().
    std::uint32_t demap(cplx z) const {
        if (bits_ == 1) return z.real() >= 0.0 ? 1u : 0u;
        const unsigned m = bits_ / 2;
        const std::uint32_t levels = std::uint32_t{1} << m;
        const std::uint32_t gi = gray_encode(nearest_level(z.real(), levels));
        const std::uint32_t gq = gray_encode(nearest_level(z.imag(), levels));
        return (gi << m) | gq;
    }

    std::string name() const {
        if (bits_ == 1) return "bpsk";
        if (bits_ == 2) return "qpsk";
        return "qam" + std::to_string(points());
    }

    static std::optional<Constellation> from_name(std::string_view s) {
        if (s == "bpsk") return bpsk();
        if (s == "qpsk" || s == "qam4") return qpsk();
        if (s.starts_with("qam")) {
            unsigned m = 0;
            for (char c : s.substr(3)) {
                if (c < '0' || c > '9') return std::nullopt;
                m = m * 10 + static_cast<unsigned>(c - '0');
            }
            for (unsigned b = 2; b <= max_bits; b += 2)
                if ((1u << b) == m) return Constellation(b);
        }
        return std::nullopt;
    }

    bool operator==(const Constellation&) const = default;

private:
    explicit Constellation(unsigned bits) : bits_(bits) {}

    double scale() const {
        const double m_points = static_cast<double>(points());
        return 1.0 / std::sqrt(2.0 * (m_points - 1.0) / 3.0);
    }

    static double level_of(std::uint32_t v, std::uint32_t levels) {
        return 2.0 * static_cast<double>(v) - static_cast<double>(levels - 1);
    }

    std::uint32_t nearest_level(double x, std::uint32_t levels) const {
        const double v = (x / scale() + static_cast<double>(levels - 1)) / 2.0;
        const double r = std::round(v);
        if (r < 0.0) return 0;
        if (r >= static_cast<double>(levels)) return levels - 1;
        return static_cast<std::uint32_t>(r);
    }

    static std::uint32_t gray_decode(std::uint32_t g) {
        g ^= g >> 1;
        g ^= g >> 2;
        g ^= g >> 4;
        return g;
    }

    static std::uint32_t gray_encode(std::uint32_t v) { return v ^ (v >> 1); }

    unsigned bits_;
};

}  // namespace ofdm
