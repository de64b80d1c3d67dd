#pragma once

#include <cstdint>
#include <vector>

#include "evsched/env.hpp"

namespace evsched {

// A day's action plan with its reward/cost audit trail. Produced by the DP
// solver, exhaustive enumeration, and greedy policy rollouts.
struct ScheduleSolution {
    std::vector<std::uint8_t> actions;      // horizon entries of 0/1
    std::vector<RewardBreakdown> per_step;  // same length as actions
    double total_reward = 0.0;
    double total_cost = 0.0;   // $
    double total_ev_kw = 0.0;  // kW-sum of charged intervals
};

// Total reward accumulated from the last step backwards. The DP solver folds
// value backwards in time, so sharing this accumulation order makes solver
// totals and simulated totals bit-identical.
double sum_rewards_backward(const std::vector<RewardBreakdown>& per_step);

// Replays a fixed action sequence through the environment over the first
// `actions.size()` slots (at most a full day) and collects the audit trail.
ScheduleSolution simulate_schedule(const std::vector<std::uint8_t>& actions,
                                   const EpisodeContext& ctx);

}  // namespace evsched
