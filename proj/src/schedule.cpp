#include "evsched/schedule.hpp"

#include <stdexcept>

namespace evsched {

double sum_rewards_backward(const std::vector<RewardBreakdown>& per_step) {
    double acc = 0.0;
    for (auto it = per_step.rbegin(); it != per_step.rend(); ++it) acc = it->total + acc;
    return acc;
}

ScheduleSolution simulate_schedule(const std::vector<std::uint8_t>& actions,
                                   const EpisodeContext& ctx) {
    if (actions.size() > static_cast<std::size_t>(kSlotsPerDay)) {
        throw std::invalid_argument("schedule longer than one day");
    }
    ScheduleSolution sol;
    sol.actions = actions;
    sol.per_step.reserve(actions.size());

    EnvState state = initial_state(ctx);
    for (std::uint8_t a : actions) {
        const Action action = a ? Action::Charge : Action::Idle;
        const StepResult r = step(state, action, ctx);
        sol.per_step.push_back(r.breakdown);
        sol.total_cost += r.breakdown.cost_usd;
        state = r.next;
    }
    sol.total_ev_kw = state.ev_run_kw;
    sol.total_reward = sum_rewards_backward(sol.per_step);
    return sol;
}

}  // namespace evsched
