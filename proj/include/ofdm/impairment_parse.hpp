#pragma once

#include <charconv>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ofdm/impairments.hpp"

namespace ofdm {

namespace detail {

inline double parse_number(std::string_view s, const std::string& what) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end)
        throw std::invalid_argument("impairment: bad number \"" + std::string(s) + "\" for " + what);
    return v;
}

// complex literal: "a", "bj", "a+bj", "a-bj"
inline cplx parse_complex(std::string_view s, const std::string& what) {
    if (s.empty()) throw std::invalid_argument("impairment: empty complex value for " + what);
    if (s.back() == 'j' || s.back() == 'J') {
        s.remove_suffix(1);
        // find the sign separating real and imaginary parts (not a leading
        // sign, not an exponent sign)
        for (std::size_t i = s.size(); i-- > 1;) {
            const char c = s[i];
            if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                const double re = parse_number(s.substr(0, i), what);
                std::string_view imag = s.substr(i);
                const double im = imag == "+" ? 1.0 : imag == "-" ? -1.0 : parse_number(imag, what);
                return cplx{re, im};
            }
        }
        const double im = s == "+" ? 1.0 : s == "-" ? -1.0 : s.empty() ? 1.0 : parse_number(s, what);
        return cplx{0.0, im};
    }
    return cplx{parse_number(s, what), 0.0};
}

inline std::vector<cplx> parse_tap_list(std::string_view s, const std::string& what) {
    std::vector<cplx> taps;
    while (!s.empty()) {
        const std::size_t semi = s.find(';');
        const std::string_view item = s.substr(0, semi);
        taps.push_back(parse_complex(item, what));
        if (semi == std::string_view::npos) break;
        s.remove_prefix(semi + 1);
    }
    return taps;
}

struct KeyValues {
    std::map<std::string, std::string, std::less<>> kv;

    std::string take(const std::string& key, const std::string& stage) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("impairment " + stage + ": missing key \"" + key + "\"");
        std::string v = it->second;
        kv.erase(it);
        return v;
    }

    std::string take_or(const std::string& key, std::string fallback) {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        std::string v = it->second;
        kv.erase(it);
        return v;
    }

    void expect_empty(const std::string& stage) const {
        if (!kv.empty())
            throw std::invalid_argument("impairment " + stage + ": unknown key \"" + kv.begin()->first + "\"");
    }
};

}  // namespace detail

/// Parses the CLI mini-syntax "name:key=value,key=value,...", e.g.
/// "awgn:snr_db=20,seed=7" or "fir:taps=1;0;0.3j" (taps are ';'-separated
/// complex literals).
inline ImpairmentStage parse_impairment(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string name(text.substr(0, colon));
    detail::KeyValues args;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            const std::size_t eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0)
                throw std::invalid_argument("impairment " + name + ": expected key=value, got \"" +
                                            std::string(item) + "\"");
            args.kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }

    if (name == "awgn") {
        AwgnStage s;
        s.snr_db = detail::parse_number(args.take("snr_db", name), "snr_db");
        s.seed = static_cast<std::uint64_t>(detail::parse_number(args.take_or("seed", "0"), "seed"));
        args.expect_empty(name);
        return s;
    }
    if (name == "cfo") {
        CfoStage s;
        s.offset_hz = detail::parse_number(args.take("offset_hz", name), "offset_hz");
        args.expect_empty(name);
        return s;
    }
    if (name == "iq_imbalance") {
        IqImbalanceStage s;
        s.gain_db = detail::parse_number(args.take_or("gain_db", "0"), "gain_db");
        s.phase_deg = detail::parse_number(args.take_or("phase_deg", "0"), "phase_deg");
        args.expect_empty(name);
        return s;
    }
    if (name == "pa_rapp") {
        PaRappStage s;
        s.smoothness_p = detail::parse_number(args.take_or("smoothness_p", "2"), "smoothness_p");
        s.input_saturation = detail::parse_number(args.take("input_saturation", name), "input_saturation");
        args.expect_empty(name);
        return s;
    }
    if (name == "fir") {
        FirStage s;
        s.taps = detail::parse_tap_list(args.take("taps", name), "taps");
        args.expect_empty(name);
        return s;
    }
    throw std::invalid_argument("unknown impairment \"" + name +
                                "\" (expected awgn, cfo, iq_imbalance, pa_rapp or fir)");
}

inline nlohmann::json stage_to_json(const ImpairmentStage& stage) {
    using nlohmann::json;
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AwgnStage>)
                return json{{"type", "awgn"}, {"snr_db", s.snr_db}, {"seed", s.seed}};
            if constexpr (std::is_same_v<T, CfoStage>)
                return json{{"type", "cfo"}, {"offset_hz", s.offset_hz}};
            if constexpr (std::is_same_v<T, IqImbalanceStage>)
                return json{{"type", "iq_imbalance"}, {"gain_db", s.gain_db}, {"phase_deg", s.phase_deg}};
            if constexpr (std::is_same_v<T, PaRappStage>)
                return json{{"type", "pa_rapp"},
                            {"smoothness_p", s.smoothness_p},
                            {"input_saturation", s.input_saturation}};
            if constexpr (std::is_same_v<T, FirStage>) {
                json taps = json::array();
                for (const auto& t : s.taps) taps.push_back(json::array({t.real(), t.imag()}));
                return json{{"type", "fir"}, {"taps", std::move(taps)}};
            }
        },
        stage);
}

inline nlohmann::json config_to_json(const ImpairmentConfig& config) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : config.stages) stages.push_back(stage_to_json(s));
    return nlohmann::json{{"stages", std::move(stages)}};
}

/// JSON form accepted by --impair-file: {"stages": [{"type": "awgn", ...}]}.
/// FIR taps are numbers or [re, im] pairs.
inline ImpairmentConfig config_from_json(const nlohmann::json& doc) {
    ImpairmentConfig config;
    if (!doc.is_object() || !doc.contains("stages") || !doc["stages"].is_array())
        throw std::invalid_argument("impairment config must be {\"stages\": [...]} ");
    for (const auto& item : doc["stages"]) {
        const std::string type = item.at("type").get<std::string>();
        if (type == "awgn") {
            config.stages.push_back(AwgnStage{item.at("snr_db").get<double>(),
                                              item.value("seed", std::uint64_t{0})});
        } else if (type == "cfo") {
            config.stages.push_back(CfoStage{item.at("offset_hz").get<double>()});
        } else if (type == "iq_imbalance") {
            config.stages.push_back(
                IqImbalanceStage{item.value("gain_db", 0.0), item.value("phase_deg", 0.0)});
        } else if (type == "pa_rapp") {
            config.stages.push_back(
                PaRappStage{item.value("smoothness_p", 2.0), item.at("input_saturation").get<double>()});
        } else if (type == "fir") {
            FirStage s;
            for (const auto& t : item.at("taps")) {
                if (t.is_number()) {
                    s.taps.emplace_back(t.get<double>(), 0.0);
                } else if (t.is_array() && t.size() == 2) {
                    s.taps.emplace_back(t[0].get<double>(), t[1].get<double>());
                } else {
                    throw std::invalid_argument("fir taps must be numbers or [re, im] pairs");
                }
            }
            config.stages.push_back(std::move(s));
        } else {
            throw std::invalid_argument("unknown impairment type \"" + type + "\"");
        }
    }
    return config;
}

}  // namespace ofdm
