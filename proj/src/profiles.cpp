#include "evsched/profiles.hpp"

#include <stdexcept>

#include "evsched/stats.hpp"

namespace evsched {

FlexibilityProfile compute_flex_index(const std::vector<Episode>& episodes, double active_kw) {
    if (episodes.empty()) throw std::invalid_argument("flexibility index needs at least one episode");
    FlexibilityProfile profile;
    for (int t = 0; t < kSlotsPerDay; ++t) {
        int active_days = 0;
        for (const Episode& ep : episodes) {
            if (ep.slots[t].ev_kw > active_kw) ++active_days;
        }
        profile.index[t] = static_cast<double>(active_days) / static_cast<double>(episodes.size());
    }
    profile.q25 = quantile(profile.index, 0.25);
    profile.q50 = quantile(profile.index, 0.50);
    profile.q75 = quantile(profile.index, 0.75);
    return profile;
}

CostProfile compute_cost_profile(const std::vector<Episode>& episodes, const TouSchedule& tariff) {
    if (episodes.empty()) throw std::invalid_argument("cost profile needs at least one episode");
    CostProfile profile;
    std::vector<double> non_negative;
    non_negative.reserve(kSlotsPerDay);
    for (int t = 0; t < kSlotsPerDay; ++t) {
        const double price = tariff.price_at(t);
        double acc = 0.0;
        for (const Episode& ep : episodes) {
            const MeterRecord& r = ep.slots[t];
            acc += price * (r.ev_kw + r.non_ev_kw - r.pv_kw) / 4.0;
        }
        profile.avg_cost[t] = acc / static_cast<double>(episodes.size());
        if (profile.avg_cost[t] >= 0.0) non_negative.push_back(profile.avg_cost[t]);
    }
    if (non_negative.empty()) {
        throw std::invalid_argument("every slot has negative average cost; cost quantiles undefined");
    }
    profile.q25 = quantile(non_negative, 0.25);
    profile.q50 = quantile(non_negative, 0.50);
    profile.q75 = quantile(non_negative, 0.75);
    return profile;
}

}  // namespace evsched
