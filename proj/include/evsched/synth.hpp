#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "evsched/calendar.hpp"
#include "evsched/meter.hpp"

namespace evsched {

// Synthetic household generator; a stand-in for metered exports when real
// data is unavailable. Output is a pure function of the config.
struct SynthConfig {
    std::uint64_t seed = 1;
    int n_days = 30;
    Date start_date{2018, 6, 1};
    double pv_peak_kw = 2.5;
    double ev_daily_min_kw = 30.0;  // kW-sum bounds for one day's charging
    double ev_daily_max_kw = 48.0;
    double ev_block_kw = 3.3;
    // Sampling weights for where charging blocks start; non-negative, not
    // all zero. Default favors evening plug-in times.
    std::array<double, kSlotsPerDay> charge_window_bias = evening_bias();

    static std::array<double, kSlotsPerDay> evening_bias();
};

std::vector<Episode> synth_generate(const SynthConfig& cfg);

}  // namespace evsched
