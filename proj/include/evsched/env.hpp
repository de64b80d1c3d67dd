#pragma once

#include <array>

#include "evsched/meter.hpp"
#include "evsched/profiles.hpp"
#include "evsched/tariff.hpp"

namespace evsched {

// EV battery and charger model. Charging delivers p_high_kw until the state
// of charge passes soc_knee, then p_low_kw.
struct BatteryConfig {
    double capacity_kwh = 24.0;
    double efficiency = 0.905;
    double soc_max = 1.0;
    double p_high_kw = 3.3;
    double p_low_kw = 1.5;
    double soc_knee = 0.9;
};

enum class Action : int { Idle = 0, Charge = 1 };

// Observation produced each slot: tariff price, PV and residual household
// power, the EV energy charged so far this day (kW-sum), battery state of
// charge, and the slot index. slot == 96 marks the terminal state.
struct EnvState {
    double price = 0.0;
    double pv_kw = 0.0;
    double non_ev_kw = 0.0;
    double ev_run_kw = 0.0;
    double soc = 0.0;
    int slot = 0;
};

struct RewardWeights {
    double consumption = 0.25;
    double flexibility = 0.25;
    double cost = 0.25;
    double soc_guard = 0.25;
};

struct RewardBreakdown {
    double consumption = 0.0;  // daily energy budget shaping
    double flexibility = 0.0;  // historical availability shaping
    double cost_rank = 0.0;    // interval cost shaping
    double soc_guard = 0.0;    // overcharge penalty
    double total = 0.0;        // weighted sum
    double cost_usd = 0.0;     // interval cost with the chosen action
};

// Everything a day-episode simulation needs besides the evolving state.
// Referenced data must outlive the context.
struct EpisodeContext {
    const Episode* episode = nullptr;
    const FlexibilityProfile* flex = nullptr;
    const CostProfile* costs = nullptr;
    const TouSchedule* tariff = nullptr;
    BatteryConfig battery;
    RewardWeights weights;
};

// Starting state of charge for a day whose metered charging totaled
// p_day_ev kW-sum: 1 - eta*p_day_ev/(4*capacity), clamped at 0 for days
// whose metered energy exceeds one pack.
double soc_start(double p_day_ev, const BatteryConfig& cfg);

// Charger power as a function of the pre-charge state of charge; the knee
// itself still charges at p_high_kw.
double charge_power(double soc, const BatteryConfig& cfg);

// Post-charge state of charge before clipping at soc_max.
double soc_after_unclipped(double soc, double p_ev_kw, const BatteryConfig& cfg);

// Post-charge state of charge, clipped at soc_max.
double soc_update(double soc, double p_ev_kw, const BatteryConfig& cfg);

// Interval electricity cost in $: price * (action*p_ev + non_ev - pv) / 4.
// Negative values mean net export.
double interval_cost(Action action, double p_ev_kw, double non_ev_kw, double pv_kw, double price);

// Daily-consumption shaping. ev_run_after_kw includes the current step's
// power when action is Charge. The over-budget branch wins at exactly
// 1.05*p_day_ev.
double consumption_reward(Action action, double ev_run_after_kw, double p_day_ev);

// Availability shaping from the flexibility quartiles; idle steps score 0.
double flexibility_reward(Action action, double availability, const FlexibilityProfile& flex);

// Interval-cost shaping from the cost quartiles; idle steps score 0.
double cost_reward(Action action, double cost_usd, const CostProfile& costs);

// Overcharge penalty, evaluated on the unclipped post-charge state of charge.
double overcharge_penalty(Action action, double soc_after_unclipped);

// Evaluates one action against a state without advancing it. Exposes the
// charger power and unclipped post-charge SoC so callers can reproduce the
// state transition.
struct ActionOutcome {
    RewardBreakdown breakdown;
    double p_ev_kw = 0.0;
    double soc_unclipped = 0.0;
};
ActionOutcome evaluate_action(const EnvState& state, Action action, const EpisodeContext& ctx);

// State for slot 0 of the context's episode.
EnvState initial_state(const EpisodeContext& ctx);

struct StepResult {
    EnvState next;
    double reward = 0.0;
    bool done = false;
    RewardBreakdown breakdown;
};

// Advances one slot. The terminal state (slot == 96) repeats the last slot's
// exogenous features. Throws std::logic_error when stepping a terminal state.
StepResult step(const EnvState& state, Action action, const EpisodeContext& ctx);

// Network input conditioning: per-feature scales taken over a training
// corpus. Zero maxima are replaced by 1 so absent features normalize to 0.
struct FeatureScales {
    double max_price = 1.0;
    double max_pv_kw = 1.0;
    double max_non_ev_kw = 1.0;
};

FeatureScales compute_feature_scales(const std::vector<Episode>& corpus, const TouSchedule& tariff);

// 6-feature observation vector in roughly [0, 1]. The running EV energy is
// scaled by the day's charging budget 1.05*p_day_ev.
std::array<double, 6> normalize(const EnvState& state, const FeatureScales& scales,
                                double p_day_ev);

}  // namespace evsched
