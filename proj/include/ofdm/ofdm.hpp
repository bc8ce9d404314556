#pragma once

// Umbrella header for the whole library.

#include "ofdm/analysis.hpp"
#include "ofdm/common.hpp"
#include "ofdm/constellation.hpp"
#include "ofdm/demodulator.hpp"
#include "ofdm/fft.hpp"
#include "ofdm/impairment_parse.hpp"
#include "ofdm/impairments.hpp"
#include "ofdm/iqfile.hpp"
#include "ofdm/lfsr.hpp"
#include "ofdm/modulator.hpp"
#include "ofdm/noise.hpp"
#include "ofdm/profile.hpp"
#include "ofdm/profile_json.hpp"
#include "ofdm/report_json.hpp"
#include "ofdm/window.hpp"
