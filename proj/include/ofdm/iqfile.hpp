#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ofdm/common.hpp"

namespace ofdm {

/// Headerless interleaved I,Q little-endian payloads. cf32le: 4-byte floats;
/// cf64le: 8-byte doubles; csv: one "i,q" text pair per line (lossless but
/// slow and bulky). Metadata travels in a "<path>.meta.json" sidecar.
enum class SampleFormat { Cf32le, Cf64le, Csv };

inline std::string format_name(SampleFormat f) {
    switch (f) {
        case SampleFormat::Cf32le: return "cf32le";
        case SampleFormat::Cf64le: return "cf64le";
        case SampleFormat::Csv: return "csv";
    }
    return "?";
}

inline std::optional<SampleFormat> format_from_name(std::string_view s) {
    if (s == "cf32le") return SampleFormat::Cf32le;
    if (s == "cf64le") return SampleFormat::Cf64le;
    if (s == "csv") return SampleFormat::Csv;
    return std::nullopt;
}

struct SidecarMeta {
    double sample_rate_hz = 0.0;
    std::string profile;
    std::optional<std::uint64_t> seed;
    std::uint64_t sample_count = 0;
    std::string format;
};

inline std::filesystem::path sidecar_path(const std::filesystem::path& payload) {
    std::filesystem::path p = payload;
    p += ".meta.json";
    return p;
}

namespace detail {

template <typename Float>
void append_le(std::string& out, Float v) {
    static_assert(sizeof(Float) == 4 || sizeof(Float) == 8);
    using Bits = std::conditional_t<sizeof(Float) == 4, std::uint32_t, std::uint64_t>;
    Bits bits;
    std::memcpy(&bits, &v, sizeof(Float));
    for (std::size_t i = 0; i < sizeof(Float); ++i)
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <typename Float>
Float read_le(const char* p) {
    using Bits = std::conditional_t<sizeof(Float) == 4, std::uint32_t, std::uint64_t>;
    Bits bits = 0;
    for (std::size_t i = 0; i < sizeof(Float); ++i)
        bits |= static_cast<Bits>(static_cast<unsigned char>(p[i])) << (8 * i);
    Float v;
    std::memcpy(&v, &bits, sizeof(Float));
    return v;
}

}  // namespace detail

inline void write_sidecar(const std::filesystem::path& payload, const SidecarMeta& meta) {
    nlohmann::json doc{{"schema_version", 1},
                       {"sample_rate_hz", meta.sample_rate_hz},
                       {"profile", meta.profile},
                       {"sample_count", meta.sample_count},
                       {"format", meta.format}};
    if (meta.seed) doc["seed"] = *meta.seed;
    std::ofstream out(sidecar_path(payload), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write sidecar for " + payload.string());
    out << doc.dump(2) << "\n";
}

inline std::optional<SidecarMeta> read_sidecar(const std::filesystem::path& payload) {
    std::ifstream in(sidecar_path(payload), std::ios::binary);
    if (!in) return std::nullopt;
    nlohmann::json doc;
    try {
        in >> doc;
        SidecarMeta meta;
        meta.sample_rate_hz = doc.at("sample_rate_hz").get<double>();
        meta.profile = doc.value("profile", std::string{});
        meta.sample_count = doc.at("sample_count").get<std::uint64_t>();
        meta.format = doc.value("format", std::string{});
        if (doc.contains("seed") && !doc["seed"].is_null())
            meta.seed = doc["seed"].get<std::uint64_t>();
        return meta;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed sidecar " + sidecar_path(payload).string() + ": " + e.what());
    }
}

/// Writes the payload plus its sidecar.
inline void write_iq(const IqBuffer& iq, const std::filesystem::path& path, SampleFormat format,
                     std::optional<std::uint64_t> seed = std::nullopt) {
    std::string blob;
    switch (format) {
        case SampleFormat::Cf32le:
            blob.reserve(iq.samples.size() * 8);
            for (const auto& s : iq.samples) {
                detail::append_le(blob, static_cast<float>(s.real()));
                detail::append_le(blob, static_cast<float>(s.imag()));
            }
            break;
        case SampleFormat::Cf64le:
            blob.reserve(iq.samples.size() * 16);
            for (const auto& s : iq.samples) {
                detail::append_le(blob, s.real());
                detail::append_le(blob, s.imag());
            }
            break;
        case SampleFormat::Csv: {
            std::ostringstream ss;
            ss.precision(17);
            for (const auto& s : iq.samples) ss << s.real() << "," << s.imag() << "\n";
            blob = ss.str();
            break;
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
    out.close();

    write_sidecar(path, SidecarMeta{iq.sample_rate_hz, iq.profile, seed,
                                    static_cast<std::uint64_t>(iq.samples.size()), format_name(format)});
}

/// Reads only the payload; metadata must come from elsewhere.
inline ComplexVec read_iq_payload(const std::filesystem::path& path, SampleFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string blob = ss.str();

    ComplexVec samples;
    switch (format) {
        case SampleFormat::Cf32le:
        case SampleFormat::Cf64le: {
            const std::size_t width = format == SampleFormat::Cf32le ? 4 : 8;
            if (blob.size() % (2 * width) != 0)
                throw std::runtime_error("truncated sample in " + path.string() + ": " +
                                         std::to_string(blob.size()) + " bytes is not a whole number of " +
                                         std::to_string(2 * width) + "-byte I/Q pairs");
            samples.resize(blob.size() / (2 * width));
            const char* p = blob.data();
            for (auto& s : samples) {
                if (width == 4) {
                    s = cplx{detail::read_le<float>(p), detail::read_le<float>(p + 4)};
                } else {
                    s = cplx{detail::read_le<double>(p), detail::read_le<double>(p + 8)};
                }
                p += 2 * width;
            }
            break;
        }
        case SampleFormat::Csv: {
            std::istringstream lines(blob);
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(lines, line)) {
                ++lineno;
                if (line.empty()) continue;
                double re = 0.0, im = 0.0;
                char comma = 0;
                std::istringstream ls(line);
                if (!(ls >> re >> comma >> im) || comma != ',')
                    throw std::runtime_error("bad csv sample at " + path.string() + ":" +
                                             std::to_string(lineno));
                samples.emplace_back(re, im);
            }
            break;
        }
    }
    return samples;
}

/// Reads payload + sidecar and cross-checks them. The explicit format, when
/// given, must agree with the sidecar's record.
inline IqBuffer read_iq(const std::filesystem::path& path,
                        std::optional<SampleFormat> format = std::nullopt) {
    const auto meta = read_sidecar(path);
    if (!meta) throw std::runtime_error("missing sidecar " + sidecar_path(path).string());
    const auto recorded = format_from_name(meta->format);
    if (!recorded) throw std::runtime_error("sidecar has unknown format \"" + meta->format + "\"");
    if (format && *format != *recorded)
        throw std::runtime_error("requested format " + format_name(*format) + " but sidecar records " +
                                 meta->format);

    IqBuffer iq;
    iq.samples = read_iq_payload(path, *recorded);
    iq.sample_rate_hz = meta->sample_rate_hz;
    iq.profile = meta->profile;
    if (iq.samples.size() != meta->sample_count)
        throw std::runtime_error("sidecar mismatch for " + path.string() + ": payload has " +
                                 std::to_string(iq.samples.size()) + " samples, sidecar says " +
                                 std::to_string(meta->sample_count));
    return iq;
}

}  // namespace ofdm
