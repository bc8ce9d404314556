#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofdm/common.hpp"
#include "ofdm/constellation.hpp"
#include "ofdm/lfsr.hpp"

namespace ofdm {

enum class Role : std::uint8_t { Data, Pilot, Null, Dc };

/// Per-bin role assignment over the DFT grid, stored by logical subcarrier
/// index k in [-ceil(N/2), floor(N/2)-1]. Logical k maps to DFT bin
/// (k mod N); that conversion happens once, when a profile is validated.
struct SubcarrierMap {
    std::vector<Role> roles;  // index i holds logical k = i + k_min

    SubcarrierMap() = default;
    explicit SubcarrierMap(std::size_t n) : roles(n, Role::Null) {}

    std::size_t size() const { return roles.size(); }

    static int k_min(std::size_t n) { return -static_cast<int>((n + 1) / 2); }
    static int k_max(std::size_t n) { return static_cast<int>(n / 2) - 1; }

    bool in_range(int k) const {
        return !roles.empty() && k >= k_min(roles.size()) && k <= k_max(roles.size());
    }

    Role role(int k) const { return roles.at(static_cast<std::size_t>(k - k_min(roles.size()))); }

    void set(int k, Role r) { roles.at(static_cast<std::size_t>(k - k_min(roles.size()))) = r; }

    static std::uint32_t dft_bin(int k, std::size_t n) {
        const int m = static_cast<int>(n);
        return static_cast<std::uint32_t>(((k % m) + m) % m);
    }

    bool operator==(const SubcarrierMap&) const = default;
};

/// Constellation assignment for the data bins: a uniform default, a per-tone
/// bit-loading table (logical index -> kind), or both. A data bin without a
/// per-tone entry falls back to the default.
struct ConstellationSpec {
    std::optional<Constellation> uniform;
    std::map<int, Constellation> per_tone;

    std::optional<Constellation> kind_for(int k) const {
        if (auto it = per_tone.find(k); it != per_tone.end()) return it->second;
        return uniform;
    }

    bool operator==(const ConstellationSpec&) const = default;
};

/// Known pilot values by logical index. Pilot polarity per OFDM symbol comes
/// from the profile scrambler sequence (0 -> +1, 1 -> -1, advanced once per
/// symbol); profiles without a scrambler transmit constant-polarity pilots.
struct PilotSpec {
    std::map<int, cplx> values;

    bool operator==(const PilotSpec&) const = default;
};

/// Complete declarative description of one OFDM transmitter instance. Every
/// standard the generator can produce is a value of this type; the
/// generation chain itself contains no per-standard logic.
struct Profile {
    std::string name;
    std::uint32_t fft_size = 0;
    double sample_rate_hz = 0.0;
    std::uint32_t cp_len = 0;
    std::uint32_t window_rolloff = 0;
    SubcarrierMap map;
    ConstellationSpec constellation;
    PilotSpec pilots;
    std::optional<ScramblerSpec> scrambler;  // nullopt == "none"
    std::uint32_t symbols_per_frame = 1;
    bool reference_symbol = false;

    bool operator==(const Profile&) const = default;
};

struct ValidationIssue {
    std::string path;     // field path, e.g. "map" or "scrambler.seed"
    std::string message;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<ValidationIssue>& issues) {
        std::string msg = "invalid profile:";
        for (const auto& i : issues) msg += "\n  " + i.path + ": " + i.message;
        return msg;
    }

    std::vector<ValidationIssue> issues_;
};

/// Checks every profile invariant and reports all violations, not just the
/// first. An empty result means the profile is valid.
inline std::vector<ValidationIssue> check(const Profile& p) {
    std::vector<ValidationIssue> out;
    auto fail = [&out](std::string path, std::string message) {
        out.push_back({std::move(path), std::move(message)});
    };

    if (p.fft_size == 0) fail("fft_size", "must be a positive integer");
    if (!(p.sample_rate_hz > 0.0) || !std::isfinite(p.sample_rate_hz))
        fail("sample_rate_hz", "must be positive and finite");
    if (p.symbols_per_frame < 1) fail("symbols_per_frame", "must be >= 1");

    if (p.fft_size > 0 && p.cp_len >= p.fft_size) fail("cp_len", "cp_len must be < fft_size");
    if (2 * p.window_rolloff > p.cp_len)
        fail("window_rolloff", "2*window_rolloff must be <= cp_len (taper uses prefix margin only)");

    const std::size_t n = p.map.size();
    if (p.fft_size > 0 && n != p.fft_size) {
        fail("map", "subcarrier map length " + std::to_string(n) + " does not equal fft_size " +
                        std::to_string(p.fft_size));
        return out;  // remaining checks need a consistent grid
    }
    if (n == 0) return out;

    const int k_lo = SubcarrierMap::k_min(n);
    std::size_t n_data = 0, n_pilot = 0, n_dc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int k = k_lo + static_cast<int>(i);
        switch (p.map.roles[i]) {
            case Role::Data: {
                ++n_data;
                if (!p.constellation.kind_for(k))
                    fail("constellation", "data bin k=" + std::to_string(k) + " has no constellation");
                break;
            }
            case Role::Pilot: {
                ++n_pilot;
                auto it = p.pilots.values.find(k);
                if (it == p.pilots.values.end()) {
                    fail("map.pilots", "pilot bin k=" + std::to_string(k) + " has no pilot value");
                } else if (std::abs(std::abs(it->second) - 1.0) > 1e-12) {
                    fail("map.pilots", "pilot value at k=" + std::to_string(k) + " must have unit magnitude");
                }
                break;
            }
            case Role::Dc: {
                ++n_dc;
                if (k != 0) fail("map.dc", "Dc role is only allowed at logical k=0");
                break;
            }
            case Role::Null:
                break;
        }
    }
    if (n_data == 0) fail("map.data", "profile must have at least one data bin");
    if (n_dc > 1) fail("map.dc", "at most one bin may be tagged Dc");

    for (const auto& [k, v] : p.pilots.values) {
        if (!p.map.in_range(k) || p.map.role(k) != Role::Pilot)
            fail("map.pilots", "pilot value given for k=" + std::to_string(k) + " which is not a pilot bin");
        (void)v;
    }
    for (const auto& [k, kind] : p.constellation.per_tone) {
        if (!p.map.in_range(k) || p.map.role(k) != Role::Data)
            fail("constellation", "per-tone entry for k=" + std::to_string(k) + " which is not a data bin");
        (void)kind;
    }

    if (p.scrambler) {
        try {
            Lfsr probe(*p.scrambler);
        } catch (const std::invalid_argument& e) {
            fail("scrambler", e.what());
        }
    }
    return out;
}

/// Immutable, validated profile with the logical->DFT conversion already
/// applied. Safe to share across concurrent frame generators.
class ValidatedProfile {
public:
    const Profile& profile() const { return p_; }

    std::uint32_t fft_size() const { return p_.fft_size; }
    std::uint32_t cp_len() const { return p_.cp_len; }
    std::uint32_t window_rolloff() const { return p_.window_rolloff; }
    double sample_rate_hz() const { return p_.sample_rate_hz; }
    bool reference_symbol() const { return p_.reference_symbol; }
    const std::optional<ScramblerSpec>& scrambler() const { return p_.scrambler; }

    /// DFT bin indices of the data bins, in ascending logical order.
    const std::vector<std::uint32_t>& data_bins() const { return data_bins_; }
    /// Constellations parallel to data_bins().
    const std::vector<Constellation>& data_kinds() const { return data_kinds_; }
    /// DFT bin indices of the pilot bins, ascending logical order.
    const std::vector<std::uint32_t>& pilot_bins() const { return pilot_bins_; }
    /// Pilot values parallel to pilot_bins().
    const std::vector<cplx>& pilot_values() const { return pilot_values_; }
    /// Role by DFT bin index.
    const std::vector<Role>& roles_by_bin() const { return roles_by_bin_; }

    std::size_t bits_per_symbol() const { return bits_per_symbol_; }
    std::size_t symbol_len() const { return p_.fft_size + p_.cp_len; }

    /// Total samples emitted for n data symbols: (n + ref) * (N + cp), plus a
    /// trailing window_rolloff-sample tail when the edge taper is active.
    std::size_t frame_len(std::size_t n_symbols) const {
        const std::size_t total = n_symbols + (p_.reference_symbol ? 1 : 0);
        return total * symbol_len() + p_.window_rolloff;
    }

    friend ValidatedProfile validate(const Profile& p);

private:
    explicit ValidatedProfile(Profile p) : p_(std::move(p)) {
        const std::size_t n = p_.fft_size;
        const int k_lo = SubcarrierMap::k_min(n);
        roles_by_bin_.assign(n, Role::Null);
        for (std::size_t i = 0; i < n; ++i) {
            const int k = k_lo + static_cast<int>(i);
            const Role r = p_.map.roles[i];
            const std::uint32_t bin = SubcarrierMap::dft_bin(k, n);
            roles_by_bin_[bin] = r;
            if (r == Role::Data) {
                data_bins_.push_back(bin);
                const Constellation kind = *p_.constellation.kind_for(k);
                data_kinds_.push_back(kind);
                bits_per_symbol_ += kind.bits();
            } else if (r == Role::Pilot) {
                pilot_bins_.push_back(bin);
                pilot_values_.push_back(p_.pilots.values.at(k));
            }
        }
    }

    Profile p_;
    std::vector<std::uint32_t> data_bins_;
    std::vector<Constellation> data_kinds_;
    std::vector<std::uint32_t> pilot_bins_;
    std::vector<cplx> pilot_values_;
    std::vector<Role> roles_by_bin_;
    std::size_t bits_per_symbol_ = 0;
};

/// Wraps the profile as validated iff every invariant holds; otherwise throws
/// a ValidationError carrying one entry per violated invariant.
inline ValidatedProfile validate(const Profile& p) {
    auto issues = check(p);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return ValidatedProfile(p);
}

enum class StandardId { Wlan80211a, AdslDmtDown, DrmModeB };

/// Builtin parameter sets for the three demonstrated standards.
///
/// 802.11a: 64-point grid at 20 MHz, 16-sample guard, 48 data bins on
/// [-26, 26] minus {0, +-7, +-21}, pilots at +-7/+-21 with the x^7+x^4+1
/// polarity sequence. ADSL downstream DMT: 512-point grid at 2.208 MHz
/// (4.3125 kHz tone spacing), 32-sample prefix, data on tones 1..255 and the
/// negative-frequency half reserved for Hermitian extension. DRM robustness
/// mode B: 1024-point grid at 48 kHz (Tu = 64/3 ms), 256-sample guard
/// (Tu/4), data on the 10 kHz occupancy carrier range [-103, 103] minus 0.
inline Profile builtin_profile(StandardId id) {
    Profile p;
    switch (id) {
        case StandardId::Wlan80211a: {
            p.name = "802.11a";
            p.fft_size = 64;
            p.sample_rate_hz = 20e6;
            p.cp_len = 16;
            p.map = SubcarrierMap(64);
            for (int k = -26; k <= 26; ++k) {
                if (k == 0) continue;
                p.map.set(k, Role::Data);
            }
            for (int k : {-21, -7, 7, 21}) p.map.set(k, Role::Pilot);
            p.map.set(0, Role::Dc);
            p.pilots.values = {{-21, cplx{1, 0}}, {-7, cplx{1, 0}}, {7, cplx{1, 0}}, {21, cplx{-1, 0}}};
            p.constellation.uniform = Constellation::qpsk();
            p.scrambler = ScramblerSpec{{7, 4}, 7, 0x7f};
            p.symbols_per_frame = 50;
            break;
        }
        case StandardId::AdslDmtDown: {
            p.name = "adsl";
            p.fft_size = 512;
            p.sample_rate_hz = 2.208e6;
            p.cp_len = 32;
            p.map = SubcarrierMap(512);
            for (int k = 1; k <= 255; ++k) p.map.set(k, Role::Data);
            p.map.set(0, Role::Dc);
            p.constellation.uniform = Constellation::qam16();
            p.symbols_per_frame = 68;
            break;
        }
        case StandardId::DrmModeB: {
            p.name = "drm-b";
            p.fft_size = 1024;
            p.sample_rate_hz = 48e3;
            p.cp_len = 256;
            p.map = SubcarrierMap(1024);
            for (int k = -103; k <= 103; ++k) {
                if (k == 0) continue;
                p.map.set(k, Role::Data);
            }
            p.map.set(0, Role::Dc);
            p.constellation.uniform = Constellation::qam64();
            p.scrambler = ScramblerSpec{{9, 5}, 9, 0x1ff};
            p.symbols_per_frame = 15;
            break;
        }
    }
    return p;
}

inline std::optional<StandardId> standard_from_name(std::string_view name) {
    if (name == "802.11a") return StandardId::Wlan80211a;
    if (name == "adsl") return StandardId::AdslDmtDown;
    if (name == "drm-b") return StandardId::DrmModeB;
    return std::nullopt;
}

inline std::vector<std::string> builtin_profile_names() { return {"802.11a", "adsl", "drm-b"}; }

}  // namespace ofdm
