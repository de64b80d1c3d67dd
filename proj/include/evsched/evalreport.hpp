#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evsched/dqn.hpp"
#include "evsched/meter.hpp"
#include "evsched/schedule.hpp"
#include "evsched/tariff.hpp"

namespace evsched {

enum class PolicyKind {
    Metered,  // replay the historical schedule (self-comparison baseline)
    Oracle,   // exact DP schedule
    Dqn,      // greedy rollout of a trained network
};

struct PeriodEnergy {
    double off_peak_kw = 0.0;
    double mid_peak_kw = 0.0;
    double on_peak_kw = 0.0;

    double total() const { return off_peak_kw + mid_peak_kw + on_peak_kw; }
    int slots_counted = 0;
};

// Sums a per-slot kW series into ToU-period buckets.
PeriodEnergy aggregate_by_period(const std::vector<double>& per_slot_kw,
                                 const TouSchedule& tariff);

struct DayResult {
    Date date;
    double metered_cost = 0.0;    // $ for the whole household, historical EV
    double optimized_cost = 0.0;  // $ with the policy's EV schedule
    // 100*(metered-optimized)/metered; absent when metered_cost <= 0, in
    // which case savings_abs still reports the $ delta.
    std::optional<double> savings_pct;
    double savings_abs = 0.0;
    double metered_ev_kw = 0.0;
    double optimized_ev_kw = 0.0;
    bool energy_constraint_ok = false;  // optimized within +-5% of metered
    PeriodEnergy metered_period;
    PeriodEnergy optimized_period;
    std::vector<std::uint8_t> optimized_actions;
    std::vector<double> optimized_ev_slot_kw;
};

struct EvalAggregate {
    double mean_metered_cost = 0.0;
    double mean_optimized_cost = 0.0;
    // Savings of the mean costs (the convention the average table row uses).
    std::optional<double> savings_pct;
    double mean_savings_abs = 0.0;
    int days_energy_ok = 0;
    int days_total = 0;
};

struct EvalReport {
    PolicyKind policy = PolicyKind::Metered;
    std::vector<DayResult> days;
    EvalAggregate aggregate;
};

// Scores a policy against the metered baseline on each test episode. The
// baseline charges exactly when the meter recorded charging, at the recorded
// powers; optimized schedules use the charger's power levels. For the Dqn
// policy `net` must be non-null.
EvalReport evaluate(PolicyKind policy, const std::vector<Episode>& test, const TrainContext& ctx,
                    const NetworkParams* net = nullptr);

// Fixed-width savings table: one row per day plus an Average row.
std::string render_savings_table(const EvalReport& report);

// date,slot,metered_ev_kw,optimized_action,optimized_ev_kw,price,pv_kw,non_ev_kw
void write_schedules_csv(const std::string& path, const EvalReport& report,
                         const std::vector<Episode>& test, const TouSchedule& tariff);

}  // namespace evsched
