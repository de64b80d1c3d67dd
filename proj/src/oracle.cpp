#include "evsched/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace evsched {

namespace {

// SoC, running kW-sum and charger power after k consecutive charge actions,
// built with the same update expressions the environment applies.
struct ChargeChain {
    std::vector<double> soc;    // soc[k], k in [0, horizon]
    std::vector<double> run;    // run[k]
    std::vector<double> power;  // power drawn by the (k+1)-th charge
};

ChargeChain build_chain(const EpisodeContext& ctx, int horizon) {
    ChargeChain chain;
    chain.soc.resize(horizon + 1);
    chain.run.resize(horizon + 1);
    chain.power.resize(horizon);
    chain.soc[0] = soc_start(ctx.episode->p_day_ev, ctx.battery);
    chain.run[0] = 0.0;
    for (int k = 0; k < horizon; ++k) {
        chain.power[k] = charge_power(chain.soc[k], ctx.battery);
        chain.soc[k + 1] = soc_update(chain.soc[k], chain.power[k], ctx.battery);
        chain.run[k + 1] = chain.run[k] + chain.power[k];
    }
    return chain;
}

EnvState state_at(const EpisodeContext& ctx, const ChargeChain& chain, int slot, int k) {
    EnvState s;
    s.slot = slot;
    s.price = ctx.tariff->price_at(slot);
    s.pv_kw = ctx.episode->slots[slot].pv_kw;
    s.non_ev_kw = ctx.episode->slots[slot].non_ev_kw;
    s.ev_run_kw = chain.run[k];
    s.soc = chain.soc[k];
    return s;
}

void check_horizon(const EpisodeContext& ctx, int horizon) {
    if (horizon < 1 || horizon > kSlotsPerDay) {
        throw std::invalid_argument("horizon must lie in 1..96");
    }
    if (!ctx.episode || !ctx.flex || !ctx.costs || !ctx.tariff) {
        throw std::invalid_argument("episode context is incomplete");
    }
}

}  // namespace

ScheduleSolution dp_optimal(const EpisodeContext& ctx, int horizon) {
    check_horizon(ctx, horizon);
    const ChargeChain chain = build_chain(ctx, horizon);

    // value[t][k]: best achievable reward from slot t onward after k charges.
    std::vector<std::vector<double>> value(horizon + 1,
                                           std::vector<double>(horizon + 1, 0.0));
    // choice[t][k]: action taken at the argmax (ties prefer Idle).
    std::vector<std::vector<std::uint8_t>> choice(horizon,
                                                  std::vector<std::uint8_t>(horizon + 1, 0));

    for (int t = horizon - 1; t >= 0; --t) {
        for (int k = t; k >= 0; --k) {
            const EnvState state = state_at(ctx, chain, t, k);
            const double idle =
                evaluate_action(state, Action::Idle, ctx).breakdown.total + value[t + 1][k];
            const double charge =
                evaluate_action(state, Action::Charge, ctx).breakdown.total + value[t + 1][k + 1];
            if (charge > idle) {
                value[t][k] = charge;
                choice[t][k] = 1;
            } else {
                value[t][k] = idle;
                choice[t][k] = 0;
            }
        }
    }

    std::vector<std::uint8_t> actions(horizon, 0);
    int k = 0;
    for (int t = 0; t < horizon; ++t) {
        actions[t] = choice[t][k];
        k += actions[t];
    }

    ScheduleSolution sol = simulate_schedule(actions, ctx);
    // The replay accumulates the same per-step totals the table was built
    // from, in the same backward order, so this equality is exact.
    if (sol.total_reward != value[0][0]) {
        throw std::logic_error("schedule replay disagrees with DP value table");
    }
    return sol;
}

ScheduleSolution enumerate_exhaustive(const EpisodeContext& ctx, int horizon) {
    check_horizon(ctx, horizon);
    if (horizon > 20) throw std::invalid_argument("exhaustive enumeration capped at 20 slots");

    ScheduleSolution best;
    bool have_best = false;
    std::vector<std::uint8_t> actions(horizon, 0);
    const std::uint64_t n_schedules = std::uint64_t{1} << horizon;
    for (std::uint64_t mask = 0; mask < n_schedules; ++mask) {
        for (int t = 0; t < horizon; ++t) actions[t] = (mask >> t) & 1u;
        ScheduleSolution candidate = simulate_schedule(actions, ctx);
        const bool better =
            !have_best || candidate.total_reward > best.total_reward ||
            (candidate.total_reward == best.total_reward && candidate.actions < best.actions);
        if (better) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

}  // namespace evsched
