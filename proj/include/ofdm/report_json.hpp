#pragma once

#include <json.hpp>

#include "ofdm/analysis.hpp"
#include "ofdm/demodulator.hpp"

namespace ofdm {

inline nlohmann::json to_json(const PsdReport& r) {
    return nlohmann::json{{"nfft", r.nfft},
                          {"segments", r.segments},
                          {"freq_bins_hz", r.freq_bins_hz},
                          {"power_db", r.power_db}};
}

inline nlohmann::json to_json(const OccupancyReport& r) {
    return nlohmann::json{{"logical_k", r.logical_k},
                          {"power_dbc", r.power_dbc},
                          {"occupied_k", r.occupied_k},
                          {"occupied_count", r.occupied_k.size()},
                          {"threshold_dbc", r.threshold_dbc}};
}

inline nlohmann::json to_json(const PaprReport& r) {
    return nlohmann::json{{"overall_db", r.overall_db}, {"per_window_db", r.per_window_db}};
}

inline nlohmann::json to_json(const EvmReport& r) {
    return nlohmann::json{{"rms_percent", r.rms_percent},
                          {"rms_db", r.rms_db},
                          {"per_symbol_percent", r.per_symbol_percent}};
}

inline nlohmann::json to_json(const BerReport& r) {
    return nlohmann::json{{"errors", r.errors}, {"total", r.total}, {"ber", r.ber}};
}

}  // namespace ofdm
