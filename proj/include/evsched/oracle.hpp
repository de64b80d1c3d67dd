#pragma once

#include "evsched/schedule.hpp"

namespace evsched {

// Exact reward-maximal schedule over the first `horizon` slots (default: the
// whole day), found by dynamic programming on (slot, charge-count).
//
// The state space collapses because battery state and running consumption do
// not depend on *when* past charges happened, only on how many there were:
// idle steps leave SoC and the running kW-sum untouched, each charge applies
// the charger curve to the current SoC, and SoC never decreases within a day.
// So after k charge actions both quantities equal the k-th entry of a single
// precomputed chain, and (slot, k) fully determines every reward term. That
// reduces 2^96 schedules to a 96x97 table.
//
// Ties are broken toward Idle at every decision, which also yields the
// lexicographically smallest optimal action string.
ScheduleSolution dp_optimal(const EpisodeContext& ctx, int horizon = kSlotsPerDay);

// Brute force over all 2^horizon schedules; the test oracle for dp_optimal.
// Throws std::invalid_argument for horizons above 20.
ScheduleSolution enumerate_exhaustive(const EpisodeContext& ctx, int horizon);

}  // namespace evsched
