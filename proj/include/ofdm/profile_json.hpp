#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ofdm/profile.hpp"

namespace ofdm {

class ProfileParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using njson = nlohmann::json;

inline std::string line_position(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void require_keys(const njson& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw ProfileParseError("unknown key \"" + it.key() + "\" in " + where);
    }
}

template <typename T>
T get_field(const njson& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ProfileParseError("missing key \"" + key + "\" in " + where);
    try {
        return it->get<T>();
    } catch (const njson::exception&) {
        throw ProfileParseError("key \"" + key + "\" in " + where + " has the wrong type");
    }
}

inline Constellation parse_constellation_name(const std::string& s, const std::string& where) {
    auto k = Constellation::from_name(s);
    if (!k) throw ProfileParseError("unknown constellation \"" + s + "\" in " + where);
    return *k;
}

inline cplx parse_pilot_value(const njson& v) {
    if (v.is_number()) return cplx{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx{v[0].get<double>(), v[1].get<double>()};
    throw ProfileParseError("pilot value must be a number or a [re, im] pair");
}

inline njson pilot_value_json(cplx v) {
    if (v.imag() == 0.0) return njson(v.real());
    return njson::array({v.real(), v.imag()});
}

}  // namespace detail

/// Parses a profile document without validating it. Strict schema: unknown
/// keys are rejected. Bins absent from map.data / map.pilots are Null.
inline Profile parse_profile(const std::string& text) {
    using detail::njson;
    njson doc;
    try {
        doc = njson::parse(text);
    } catch (const njson::parse_error& e) {
        throw ProfileParseError("profile parse error at " + detail::line_position(text, e.byte) +
                                ": " + e.what());
    }
    if (!doc.is_object()) throw ProfileParseError("profile document must be a JSON object");

    detail::require_keys(doc,
                         {"name", "fft_size", "sample_rate_hz", "cp_len", "window_rolloff",
                          "symbols_per_frame", "reference_symbol", "scrambler", "map",
                          "constellation"},
                         "profile");

    Profile p;
    p.name = detail::get_field<std::string>(doc, "name", "profile");
    p.fft_size = detail::get_field<std::uint32_t>(doc, "fft_size", "profile");
    p.sample_rate_hz = detail::get_field<double>(doc, "sample_rate_hz", "profile");
    p.cp_len = detail::get_field<std::uint32_t>(doc, "cp_len", "profile");
    p.window_rolloff = detail::get_field<std::uint32_t>(doc, "window_rolloff", "profile");
    p.symbols_per_frame = detail::get_field<std::uint32_t>(doc, "symbols_per_frame", "profile");
    p.reference_symbol = detail::get_field<bool>(doc, "reference_symbol", "profile");

    const njson& scr = doc.at("scrambler");
    if (scr.is_string()) {
        if (scr.get<std::string>() != "none")
            throw ProfileParseError("scrambler must be \"none\" or an object with poly/seed");
        p.scrambler = std::nullopt;
    } else if (scr.is_object()) {
        detail::require_keys(scr, {"poly", "seed"}, "scrambler");
        ScramblerSpec s;
        s.taps = detail::get_field<std::vector<unsigned>>(scr, "poly", "scrambler");
        std::sort(s.taps.begin(), s.taps.end(), std::greater<>());
        s.width = s.taps.empty() ? 0 : s.taps.front();
        s.seed = detail::get_field<std::uint32_t>(scr, "seed", "scrambler");
        p.scrambler = s;
    } else {
        throw ProfileParseError("scrambler must be \"none\" or an object with poly/seed");
    }

    const njson& map = doc.at("map");
    if (!map.is_object()) throw ProfileParseError("map must be an object");
    detail::require_keys(map, {"data", "pilots", "dc"}, "map");
    if (p.fft_size == 0) throw ProfileParseError("fft_size must be positive");
    p.map = SubcarrierMap(p.fft_size);

    auto place = [&p](int k, Role role, const std::string& where) {
        if (!p.map.in_range(k))
            throw ProfileParseError(where + ": logical index " + std::to_string(k) +
                                    " is outside the grid for fft_size " + std::to_string(p.fft_size));
        if (p.map.role(k) != Role::Null)
            throw ProfileParseError(where + ": logical index " + std::to_string(k) +
                                    " is assigned more than one role");
        p.map.set(k, role);
    };

    for (const auto& v : detail::get_field<std::vector<njson>>(map, "data", "map")) {
        if (!v.is_number_integer()) throw ProfileParseError("map.data entries must be integers");
        place(v.get<int>(), Role::Data, "map.data");
    }
    for (const auto& v : detail::get_field<std::vector<njson>>(map, "pilots", "map")) {
        if (!v.is_object()) throw ProfileParseError("map.pilots entries must be {k, value} objects");
        detail::require_keys(v, {"k", "value"}, "map.pilots");
        const int k = detail::get_field<int>(v, "k", "map.pilots");
        place(k, Role::Pilot, "map.pilots");
        p.pilots.values[k] = detail::parse_pilot_value(v.at("value"));
    }
    if (detail::get_field<bool>(map, "dc", "map")) place(0, Role::Dc, "map.dc");

    const njson& con = doc.at("constellation");
    if (con.is_string()) {
        p.constellation.uniform = detail::parse_constellation_name(con.get<std::string>(), "constellation");
    } else if (con.is_object()) {
        detail::require_keys(con, {"default", "per_tone"}, "constellation");
        if (con.contains("default"))
            p.constellation.uniform = detail::parse_constellation_name(
                detail::get_field<std::string>(con, "default", "constellation"), "constellation");
        if (con.contains("per_tone")) {
            const njson& table = con.at("per_tone");
            if (!table.is_object())
                throw ProfileParseError("constellation.per_tone must map logical indices to kinds");
            for (auto it = table.begin(); it != table.end(); ++it) {
                int k = 0;
                try {
                    std::size_t used = 0;
                    k = std::stoi(it.key(), &used);
                    if (used != it.key().size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw ProfileParseError("constellation.per_tone key \"" + it.key() +
                                            "\" is not an integer logical index");
                }
                p.constellation.per_tone[k] = detail::parse_constellation_name(
                    it->get<std::string>(), "constellation.per_tone");
            }
        }
    } else {
        throw ProfileParseError("constellation must be a kind name or a {default, per_tone} object");
    }

    return p;
}

/// Parses and validates: the result satisfies every profile invariant.
inline Profile load_profile(const std::string& text) {
    Profile p = parse_profile(text);
    auto issues = check(p);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return p;
}

inline Profile load_profile_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open profile file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_profile(ss.str());
}

inline nlohmann::json profile_to_json(const Profile& p) {
    using detail::njson;
    njson map = njson::object();
    njson data = njson::array();
    njson pilots = njson::array();
    bool dc = false;
    const int k_lo = SubcarrierMap::k_min(p.map.size());
    for (std::size_t i = 0; i < p.map.size(); ++i) {
        const int k = k_lo + static_cast<int>(i);
        switch (p.map.roles[i]) {
            case Role::Data:
                data.push_back(k);
                break;
            case Role::Pilot:
                pilots.push_back(njson{{"k", k}, {"value", detail::pilot_value_json(p.pilots.values.at(k))}});
                break;
            case Role::Dc:
                dc = true;
                break;
            case Role::Null:
                break;
        }
    }
    map["data"] = std::move(data);
    map["pilots"] = std::move(pilots);
    map["dc"] = dc;

    njson con;
    if (p.constellation.per_tone.empty() && p.constellation.uniform) {
        con = p.constellation.uniform->name();
    } else {
        con = njson::object();
        if (p.constellation.uniform) con["default"] = p.constellation.uniform->name();
        njson table = njson::object();
        for (const auto& [k, kind] : p.constellation.per_tone) table[std::to_string(k)] = kind.name();
        con["per_tone"] = std::move(table);
    }

    njson scr;
    if (p.scrambler) {
        scr = njson{{"poly", p.scrambler->taps}, {"seed", p.scrambler->seed}};
    } else {
        scr = "none";
    }

    return njson{{"name", p.name},
                 {"fft_size", p.fft_size},
                 {"sample_rate_hz", p.sample_rate_hz},
                 {"cp_len", p.cp_len},
                 {"window_rolloff", p.window_rolloff},
                 {"symbols_per_frame", p.symbols_per_frame},
                 {"reference_symbol", p.reference_symbol},
                 {"scrambler", std::move(scr)},
                 {"map", std::move(map)},
                 {"constellation", std::move(con)}};
}

inline std::string save_profile(const Profile& p) { return profile_to_json(p).dump(2) + "\n"; }

}  // namespace ofdm
