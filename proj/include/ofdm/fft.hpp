#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "ofdm/common.hpp"

namespace ofdm {

namespace detail {

// Twiddle and bit-reversal tables for an in-place radix-2 DIT transform.
struct Radix2Tables {
    std::size_t n = 0;
    std::vector<cplx> twiddle;          // exp(-j 2 pi k / n), k < n/2
    std::vector<std::uint32_t> bitrev;

    explicit Radix2Tables(std::size_t n_) : n(n_) {
        twiddle.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k)
            twiddle[k] = std::polar(1.0, -two_pi * static_cast<double>(k) / static_cast<double>(n));
        bitrev.resize(n);
        const int bits = std::countr_zero(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t r = 0;
            for (int b = 0; b < bits; ++b)
                if (i & (std::size_t{1} << b)) r |= std::uint32_t{1} << (bits - 1 - b);
            bitrev[i] = r;
        }
    }
};

// Forward transform (negative exponent), no scaling. x.size() == t.n, power of two.
inline void fft_pow2(std::span<cplx> x, const Radix2Tables& t) {
    const std::size_t n = t.n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t j = t.bitrev[i];
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx w = t.twiddle[k * step];
                const cplx u = x[base + k];
                const cplx v = x[base + k + half] * w;
                x[base + k] = u + v;
                x[base + k + half] = u - v;
            }
        }
    }
}

}  // namespace detail

/// Precomputed transform of one length. Power-of-two lengths run a radix-2
/// kernel directly; any other length goes through a Bluestein chirp-z
/// convolution over the next power of two >= 2N-1.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("FftPlan: length must be >= 1");
        if (std::has_single_bit(n_)) {
            tables_.emplace(n_);
            return;
        }
        m_ = std::bit_ceil(2 * n_ - 1);
        tables_.emplace(m_);
        // chirp[i] = exp(-j pi i^2 / N); i^2 reduced mod 2N keeps the phase
        // argument small for large lengths
        chirp_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint64_t r = (i * i) % (2 * n_);
            chirp_[i] = std::polar(1.0, -pi * static_cast<double>(r) / static_cast<double>(n_));
        }
        ComplexVec kernel(m_, cplx{0.0, 0.0});
        kernel[0] = std::conj(chirp_[0]);
        for (std::size_t i = 1; i < n_; ++i)
            kernel[i] = kernel[m_ - i] = std::conj(chirp_[i]);
        detail::fft_pow2(kernel, *tables_);
        kernel_fft_ = std::move(kernel);
    }

    std::size_t size() const { return n_; }

    /// X[k] = sum_n x[n] exp(-j 2 pi k n / N)
    ComplexVec forward(std::span<const cplx> x) const {
        check_len(x.size());
        if (m_ == 0) {
            ComplexVec out(x.begin(), x.end());
            detail::fft_pow2(out, *tables_);
            return out;
        }
        return bluestein(x);
    }

    /// x[n] = (1/N) sum_k X[k] exp(+j 2 pi k n / N)
    ComplexVec inverse(std::span<const cplx> X) const {
        check_len(X.size());
        ComplexVec tmp(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) tmp[i] = std::conj(X[i]);
        ComplexVec out = forward(tmp);
        const double scale = 1.0 / static_cast<double>(n_);
        for (auto& v : out) v = std::conj(v) * scale;
        return out;
    }

private:
    void check_len(std::size_t got) const {
        if (got != n_)
            throw std::invalid_argument("FftPlan: input length " + std::to_string(got) +
                                        " does not match plan length " + std::to_string(n_));
    }

    ComplexVec bluestein(std::span<const cplx> x) const {
        ComplexVec a(m_, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n_; ++i) a[i] = x[i] * chirp_[i];
        detail::fft_pow2(a, *tables_);
        for (std::size_t i = 0; i < m_; ++i) a[i] *= kernel_fft_[i];
        // inverse convolution FFT via conjugation
        for (auto& v : a) v = std::conj(v);
        detail::fft_pow2(a, *tables_);
        const double scale = 1.0 / static_cast<double>(m_);
        ComplexVec out(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = std::conj(a[k]) * scale * chirp_[k];
        return out;
    }

    std::size_t n_ = 0;
    std::size_t m_ = 0;  // 0 for the power-of-two fast path
    std::optional<detail::Radix2Tables> tables_;
    ComplexVec chirp_;
    ComplexVec kernel_fft_;
};

/// One-shot forward DFT, X[k] = sum_n x[n] exp(-j 2 pi k n / N). Any N >= 1.
inline ComplexVec dft(std::span<const cplx> x) {
    if (x.empty()) throw std::invalid_argument("dft: empty input");
    return FftPlan(x.size()).forward(x);
}

/// One-shot inverse DFT, x[n] = (1/N) sum_k X[k] exp(+j 2 pi k n / N). Any N >= 1.
inline ComplexVec idft(std::span<const cplx> X) {
    if (X.empty()) throw std::invalid_argument("idft: empty input");
    return FftPlan(X.size()).inverse(X);
}

}  // namespace ofdm
