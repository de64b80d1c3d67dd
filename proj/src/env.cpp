#include "evsched/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace evsched {

double soc_start(double p_day_ev, const BatteryConfig& cfg) {
    const double s = 1.0 - cfg.efficiency * p_day_ev / (4.0 * cfg.capacity_kwh);
    return std::max(0.0, s);
}

double charge_power(double soc, const BatteryConfig& cfg) {
    return soc <= cfg.soc_knee ? cfg.p_high_kw : cfg.p_low_kw;
}

double soc_after_unclipped(double soc, double p_ev_kw, const BatteryConfig& cfg) {
    return soc + cfg.efficiency * p_ev_kw / (4.0 * cfg.capacity_kwh);
}

double soc_update(double soc, double p_ev_kw, const BatteryConfig& cfg) {
    return std::min(cfg.soc_max, soc_after_unclipped(soc, p_ev_kw, cfg));
}

double interval_cost(Action action, double p_ev_kw, double non_ev_kw, double pv_kw, double price) {
    const double acting = action == Action::Charge ? p_ev_kw : 0.0;
    return price * (acting + non_ev_kw - pv_kw) / 4.0;
}

double consumption_reward(Action action, double ev_run_after_kw, double p_day_ev) {
    const bool under_budget = ev_run_after_kw < 1.05 * p_day_ev;
    if (action == Action::Charge) return under_budget ? 1.0 : -10.0;
    return under_budget ? -0.5 : 1.0;
}

double flexibility_reward(Action action, double availability, const FlexibilityProfile& flex) {
    if (action == Action::Idle) return 0.0;
    if (availability <= flex.q25) return -2.0;
    if (availability <= flex.q50) return -1.0;
    if (availability <= flex.q75) return 1.0;
    return 2.0;
}

double cost_reward(Action action, double cost_usd, const CostProfile& costs) {
    if (action == Action::Idle) return 0.0;
    if (cost_usd <= costs.q25) return 2.0;
    if (cost_usd <= costs.q50) return 1.0;
    if (cost_usd <= costs.q75) return -1.0;
    return -2.0;
}

double overcharge_penalty(Action action, double soc_after_unclipped) {
    return (action == Action::Charge && soc_after_unclipped >= 1.0) ? -10.0 : 0.0;
}

ActionOutcome evaluate_action(const EnvState& state, Action action, const EpisodeContext& ctx) {
    ActionOutcome out;
    out.p_ev_kw = action == Action::Charge ? charge_power(state.soc, ctx.battery) : 0.0;
    out.soc_unclipped = soc_after_unclipped(state.soc, out.p_ev_kw, ctx.battery);

    RewardBreakdown& b = out.breakdown;
    b.cost_usd = interval_cost(action, out.p_ev_kw, state.non_ev_kw, state.pv_kw, state.price);
    b.consumption =
        consumption_reward(action, state.ev_run_kw + out.p_ev_kw, ctx.episode->p_day_ev);
    b.flexibility = flexibility_reward(action, ctx.flex->index[state.slot], *ctx.flex);
    b.cost_rank = cost_reward(action, b.cost_usd, *ctx.costs);
    b.soc_guard = overcharge_penalty(action, out.soc_unclipped);
    b.total = ctx.weights.consumption * b.consumption + ctx.weights.flexibility * b.flexibility +
              ctx.weights.cost * b.cost_rank + ctx.weights.soc_guard * b.soc_guard;
    return out;
}

EnvState initial_state(const EpisodeContext& ctx) {
    const Episode& ep = *ctx.episode;
    EnvState s;
    s.slot = 0;
    s.price = ctx.tariff->price_at(0);
    s.pv_kw = ep.slots[0].pv_kw;
    s.non_ev_kw = ep.slots[0].non_ev_kw;
    s.ev_run_kw = 0.0;
    s.soc = soc_start(ep.p_day_ev, ctx.battery);
    return s;
}

StepResult step(const EnvState& state, Action action, const EpisodeContext& ctx) {
    if (state.slot >= kSlotsPerDay) throw std::logic_error("step on a finished episode");

    const ActionOutcome out = evaluate_action(state, action, ctx);

    StepResult result;
    result.breakdown = out.breakdown;
    result.reward = out.breakdown.total;
    result.done = state.slot + 1 == kSlotsPerDay;

    EnvState& next = result.next;
    next.slot = state.slot + 1;
    next.soc = soc_update(state.soc, out.p_ev_kw, ctx.battery);
    next.ev_run_kw = state.ev_run_kw + out.p_ev_kw;
    const int exo_slot = std::min(next.slot, kSlotsPerDay - 1);
    next.price = ctx.tariff->price_at(exo_slot);
    next.pv_kw = ctx.episode->slots[exo_slot].pv_kw;
    next.non_ev_kw = ctx.episode->slots[exo_slot].non_ev_kw;
    return result;
}

FeatureScales compute_feature_scales(const std::vector<Episode>& corpus,
                                     const TouSchedule& tariff) {
    FeatureScales scales;
    scales.max_price = tariff.max_price();
    double max_pv = 0.0, max_non_ev = 0.0;
    for (const Episode& ep : corpus) {
        for (const MeterRecord& r : ep.slots) {
            max_pv = std::max(max_pv, r.pv_kw);
            max_non_ev = std::max(max_non_ev, r.non_ev_kw);
        }
    }
    scales.max_pv_kw = max_pv > 0.0 ? max_pv : 1.0;
    scales.max_non_ev_kw = max_non_ev > 0.0 ? max_non_ev : 1.0;
    if (!(scales.max_price > 0.0)) scales.max_price = 1.0;
    return scales;
}

std::array<double, 6> normalize(const EnvState& state, const FeatureScales& scales,
                                double p_day_ev) {
    const double budget = 1.05 * p_day_ev;
    return {
        state.price / scales.max_price,
        state.pv_kw / scales.max_pv_kw,
        state.non_ev_kw / scales.max_non_ev_kw,
        budget > 0.0 ? state.ev_run_kw / budget : 0.0,
        state.soc,
        static_cast<double>(state.slot) / 95.0,
    };
}

}  // namespace evsched
