#pragma once

#include <array>
#include <vector>

#include "evsched/calendar.hpp"
#include "evsched/meter.hpp"
#include "evsched/tariff.hpp"

namespace evsched {

// Per-slot historical charging availability: index[t] is the fraction of
// days with EV charging active in slot t, plus the quartile thresholds the
// availability reward buckets against.
struct FlexibilityProfile {
    std::array<double, kSlotsPerDay> index{};
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
};

// Per-slot average electricity cost ($ per 15-minute interval). Averages may
// be negative where PV export dominates; the quartile thresholds are computed
// over the non-negative slots only.
struct CostProfile {
    std::array<double, kSlotsPerDay> avg_cost{};
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
};

// active_kw filters metering noise when deciding whether a slot counts as
// charging. Throws std::invalid_argument on an empty episode list.
FlexibilityProfile compute_flex_index(const std::vector<Episode>& episodes,
                                      double active_kw = 0.1);

// Per-day slot cost is price * (ev + non_ev - pv) / 4 (kW averaged over the
// interval -> kWh). Throws std::invalid_argument when episodes are empty or
// every slot average is negative (quantiles undefined).
CostProfile compute_cost_profile(const std::vector<Episode>& episodes,
                                 const TouSchedule& tariff);

}  // namespace evsched
