#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ofdm/fft.hpp"
#include "ofdm/lfsr.hpp"
#include "ofdm/noise.hpp"
#include "ofdm/window.hpp"

using namespace ofdm;

namespace {

// Independent O(N^2) transform straight from the definition; the oracle the
// fast paths are judged against.
ComplexVec naive_dft(const ComplexVec& x) {
    const std::size_t n = x.size();
    ComplexVec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i)
            acc += x[i] * std::polar(1.0, -two_pi * static_cast<double>(k * i) / static_cast<double>(n));
        out[k] = acc;
    }
    return out;
}

ComplexVec naive_idft(const ComplexVec& X) {
    const std::size_t n = X.size();
    ComplexVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k)
            acc += X[k] * std::polar(1.0, two_pi * static_cast<double>(k * i) / static_cast<double>(n));
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

ComplexVec random_vec(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexVec v(n);
    for (auto& z : v) z = cplx{u(rng), u(rng)};
    return v;
}

double rel_error(const ComplexVec& got, const ComplexVec& want) {
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        err += std::norm(got[i] - want[i]);
        ref += std::norm(want[i]);
    }
    return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
}

}  // namespace

TEST_CASE("idft of a lone DC bin is a constant vector") {
    const cplx a{2.5, -1.0};
    for (std::size_t n : {1u, 4u, 12u, 64u}) {
        ComplexVec X(n, cplx{0.0, 0.0});
        X[0] = a;
        const ComplexVec x = idft(X);
        for (const auto& v : x) REQUIRE(std::abs(v - a / static_cast<double>(n)) < 1e-12);
    }
}

TEST_CASE("idft of all-ones is the unit impulse") {
    const std::size_t n = 32;
    const ComplexVec X(n, cplx{1.0, 0.0});
    const ComplexVec x = idft(X);
    REQUIRE(std::abs(x[0] - cplx{1.0, 0.0}) < 1e-12);
    for (std::size_t i = 1; i < n; ++i) REQUIRE(std::abs(x[i]) < 1e-12);
}

TEST_CASE("dft of the unit impulse is all-ones") {
    ComplexVec x{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    for (const auto& v : dft(x)) REQUIRE(std::abs(v - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("idft matches the naive oracle at N=12") {
    const ComplexVec X = random_vec(12, 7);
    REQUIRE(rel_error(idft(X), naive_idft(X)) < 1e-9);
}

TEST_CASE("dft and idft match the naive oracle for all required lengths") {
    std::vector<std::size_t> lengths;
    for (std::size_t n = 1; n <= 64; ++n) lengths.push_back(n);
    for (std::size_t n : {448u, 704u, 1024u, 1152u}) lengths.push_back(n);
    for (std::size_t n : lengths) {
        const ComplexVec x = random_vec(n, static_cast<std::uint32_t>(1000 + n));
        INFO("N = " << n);
        REQUIRE(rel_error(dft(x), naive_dft(x)) < 1e-9);
        REQUIRE(rel_error(idft(x), naive_idft(x)) < 1e-9);
    }
}

TEST_CASE("dft inverts idft on a long random vector") {
    const ComplexVec X = random_vec(1000, 11);
    const ComplexVec back = dft(idft(X));
    REQUIRE(rel_error(back, X) < 1e-9);
}

TEST_CASE("Parseval holds under the 1/N inverse normalization") {
    for (std::size_t n : {12u, 64u, 448u}) {
        const ComplexVec X = random_vec(n, static_cast<std::uint32_t>(n));
        const ComplexVec x = idft(X);
        double time_energy = 0.0, freq_energy = 0.0;
        for (const auto& v : x) time_energy += std::norm(v);
        for (const auto& v : X) freq_energy += std::norm(v);
        freq_energy /= static_cast<double>(n);
        REQUIRE(std::abs(time_energy - freq_energy) < 1e-9 * freq_energy);
    }
}

TEST_CASE("empty transforms are rejected") {
    REQUIRE_THROWS_AS(dft(ComplexVec{}), std::invalid_argument);
    REQUIRE_THROWS_AS(idft(ComplexVec{}), std::invalid_argument);
}

TEST_CASE("x^7+x^4+1 with an all-ones seed has period exactly 127") {
    const ScramblerSpec spec{{7, 4}, 7, 0x7f};

    // oracle: walk the register state by state and find the first return
    Lfsr gen(spec);
    std::size_t period = 0;
    do {
        gen.next();
        ++period;
    } while (gen.state() != 0x7f && period < 1000);
    REQUIRE(period == 127);

    // and the bit stream itself repeats with that period
    const auto bits = lfsr_bits(spec, 2 * 127);
    for (std::size_t i = 0; i < 127; ++i) REQUIRE(bits[i] == bits[i + 127]);
}

TEST_CASE("lfsr periodicity holds for other maximal polynomials") {
    for (const ScramblerSpec spec : {ScramblerSpec{{3, 2}, 3, 0b101}, ScramblerSpec{{5, 3}, 5, 1},
                                     ScramblerSpec{{9, 5}, 9, 0x1ff}}) {
        const std::size_t period = (std::size_t{1} << spec.width) - 1;
        const auto bits = lfsr_bits(spec, 2 * period);
        for (std::size_t i = 0; i < period; ++i) {
            INFO("width " << spec.width << " position " << i);
            REQUIRE(bits[i] == bits[i + period]);
        }
    }
}

TEST_CASE("lfsr rejects degenerate seeds and zero count is empty") {
    REQUIRE_THROWS_AS(lfsr_bits(ScramblerSpec{{7, 4}, 7, 0}, 8), std::invalid_argument);
    REQUIRE(lfsr_bits(default_prbs_spec(), 0).empty());
}

TEST_CASE("raised cosine taper") {
    REQUIRE(raised_cosine_taper(0).empty());

    const auto w4 = raised_cosine_taper(4);
    // closed form evaluated independently: 0.5*(1 - cos(pi*(i+0.5)/4))
    const double expected[] = {0.038060233744356631, 0.30865828381745508, 0.69134171618254492,
                               0.96193976625564337};
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(w4[i] == Catch::Approx(expected[i]).epsilon(1e-14));

    for (std::size_t r : {1u, 4u, 9u, 16u}) {
        const auto w = raised_cosine_taper(r);
        for (std::size_t i = 0; i < r; ++i) REQUIRE(w[i] + w[r - 1 - i] == Catch::Approx(1.0).margin(1e-15));
        for (std::size_t i = 1; i < r; ++i) REQUIRE(w[i] > w[i - 1]);
    }
}

TEST_CASE("gaussian pairs are deterministic per seed") {
    const auto a = gaussian_pairs(42, 1000);
    const auto b = gaussian_pairs(42, 1000);
    REQUIRE(a == b);
    const auto c = gaussian_pairs(43, 1000);
    REQUIRE(a != c);
}

TEST_CASE("gaussian pairs have CN(0,1) statistics") {
    const std::size_t n = 1'000'000;
    const auto z = gaussian_pairs(7, n);
    cplx mean{0.0, 0.0};
    double var = 0.0;
    for (const auto& v : z) {
        mean += v;
        var += std::norm(v);
    }
    mean /= static_cast<double>(n);
    var /= static_cast<double>(n);
    REQUIRE(std::abs(mean) < 4e-3);
    REQUIRE(std::abs(var - 1.0) < 5e-3);
}
