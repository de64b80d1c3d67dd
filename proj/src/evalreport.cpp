#include "evsched/evalreport.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "evsched/oracle.hpp"

namespace evsched {

PeriodEnergy aggregate_by_period(const std::vector<double>& per_slot_kw,
                                 const TouSchedule& tariff) {
    if (per_slot_kw.size() != static_cast<std::size_t>(kSlotsPerDay)) {
        throw std::invalid_argument("per-slot series must have 96 entries");
    }
    PeriodEnergy agg;
    for (int t = 0; t < kSlotsPerDay; ++t) {
        switch (tariff.period_at(t)) {
            case TouPeriod::OffPeak: agg.off_peak_kw += per_slot_kw[t]; break;
            case TouPeriod::MidPeak: agg.mid_peak_kw += per_slot_kw[t]; break;
            case TouPeriod::OnPeak: agg.on_peak_kw += per_slot_kw[t]; break;
        }
        ++agg.slots_counted;
    }
    return agg;
}

namespace {

double metered_day_cost(const Episode& ep, const TouSchedule& tariff) {
    double cost = 0.0;
    for (int t = 0; t < kSlotsPerDay; ++t) {
        const MeterRecord& r = ep.slots[t];
        cost += interval_cost(Action::Charge, r.ev_kw, r.non_ev_kw, r.pv_kw, tariff.price_at(t));
    }
    return cost;
}

std::vector<double> ev_slot_series(const ScheduleSolution& sol, const EpisodeContext& ctx) {
    // Recover per-slot charged power by replaying the SoC chain.
    std::vector<double> series(kSlotsPerDay, 0.0);
    double soc = soc_start(ctx.episode->p_day_ev, ctx.battery);
    for (std::size_t t = 0; t < sol.actions.size(); ++t) {
        if (sol.actions[t]) {
            series[t] = charge_power(soc, ctx.battery);
            soc = soc_update(soc, series[t], ctx.battery);
        }
    }
    return series;
}

}  // namespace

EvalReport evaluate(PolicyKind policy, const std::vector<Episode>& test, const TrainContext& ctx,
                    const NetworkParams* net) {
    if (test.empty()) throw std::invalid_argument("evaluation needs at least one episode");
    if (policy == PolicyKind::Dqn && net == nullptr) {
        throw std::invalid_argument("Dqn policy evaluation needs a network");
    }

    EvalReport report;
    report.policy = policy;
    double metered_sum = 0.0, optimized_sum = 0.0, abs_sum = 0.0;

    for (const Episode& ep : test) {
        const EpisodeContext ep_ctx = ctx.for_episode(ep);
        DayResult day;
        day.date = ep.date;
        day.metered_cost = metered_day_cost(ep, *ctx.tariff);
        day.metered_ev_kw = ep.p_day_ev;
        std::vector<double> metered_series(kSlotsPerDay, 0.0);
        for (int t = 0; t < kSlotsPerDay; ++t) metered_series[t] = ep.slots[t].ev_kw;
        day.metered_period = aggregate_by_period(metered_series, *ctx.tariff);

        if (policy == PolicyKind::Metered) {
            day.optimized_cost = day.metered_cost;
            day.optimized_ev_kw = day.metered_ev_kw;
            day.optimized_period = day.metered_period;
            day.optimized_ev_slot_kw = metered_series;
            day.optimized_actions.assign(kSlotsPerDay, 0);
            for (int t = 0; t < kSlotsPerDay; ++t) {
                day.optimized_actions[t] = ep.slots[t].ev_kw > 0.0 ? 1 : 0;
            }
        } else {
            const ScheduleSolution sol = policy == PolicyKind::Oracle
                                             ? dp_optimal(ep_ctx)
                                             : greedy_rollout(*net, ep, ctx);
            day.optimized_cost = sol.total_cost;
            day.optimized_ev_kw = sol.total_ev_kw;
            day.optimized_ev_slot_kw = ev_slot_series(sol, ep_ctx);
            day.optimized_period = aggregate_by_period(day.optimized_ev_slot_kw, *ctx.tariff);
            day.optimized_actions = sol.actions;
        }

        day.savings_abs = day.metered_cost - day.optimized_cost;
        if (day.metered_cost > 0.0) {
            day.savings_pct = 100.0 * day.savings_abs / day.metered_cost;
        }
        day.energy_constraint_ok = day.optimized_ev_kw >= 0.95 * ep.p_day_ev &&
                                   day.optimized_ev_kw <= 1.05 * ep.p_day_ev;

        metered_sum += day.metered_cost;
        optimized_sum += day.optimized_cost;
        abs_sum += day.savings_abs;
        if (day.energy_constraint_ok) ++report.aggregate.days_energy_ok;
        report.days.push_back(std::move(day));
    }

    EvalAggregate& agg = report.aggregate;
    agg.days_total = static_cast<int>(test.size());
    agg.mean_metered_cost = metered_sum / agg.days_total;
    agg.mean_optimized_cost = optimized_sum / agg.days_total;
    agg.mean_savings_abs = abs_sum / agg.days_total;
    if (agg.mean_metered_cost > 0.0) {
        agg.savings_pct =
            100.0 * (agg.mean_metered_cost - agg.mean_optimized_cost) / agg.mean_metered_cost;
    }
    return report;
}

std::string render_savings_table(const EvalReport& report) {
    std::string out;
    char line[128];
    std::snprintf(line, sizeof(line), "%-12s %-10s %-10s %s\n", "Day", "Cost ($)", "Cost ($)",
                  "Savings (%)");
    out += line;
    for (const DayResult& day : report.days) {
        std::string pct = "-";
        if (day.savings_pct) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.1f", *day.savings_pct);
            pct = buf;
        }
        std::snprintf(line, sizeof(line), "%-12s %-10.2f %-10.2f %s\n",
                      format_date_table(day.date).c_str(), day.metered_cost, day.optimized_cost,
                      pct.c_str());
        out += line;
    }
    std::string pct = "-";
    if (report.aggregate.savings_pct) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", *report.aggregate.savings_pct);
        pct = buf;
    }
    std::snprintf(line, sizeof(line), "%-12s %-10.2f %-10.2f %s\n", "Average",
                  report.aggregate.mean_metered_cost, report.aggregate.mean_optimized_cost,
                  pct.c_str());
    out += line;
    return out;
}

void write_schedules_csv(const std::string& path, const EvalReport& report,
                         const std::vector<Episode>& test, const TouSchedule& tariff) {
    if (report.days.size() != test.size()) {
        throw std::invalid_argument("report and episode list sizes differ");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write schedules CSV: " + path);
    out << "date,slot,metered_ev_kw,optimized_action,optimized_ev_kw,price,pv_kw,non_ev_kw\n";
    char buf[256];
    for (std::size_t d = 0; d < test.size(); ++d) {
        const Episode& ep = test[d];
        const DayResult& day = report.days[d];
        for (int t = 0; t < kSlotsPerDay; ++t) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%.10g,%d,%.10g,%.10g,%.10g,%.10g\n",
                          format_date_iso(ep.date).c_str(), t, ep.slots[t].ev_kw,
                          static_cast<int>(day.optimized_actions[t]), day.optimized_ev_slot_kw[t],
                          tariff.price_at(t), ep.slots[t].pv_kw, ep.slots[t].non_ev_kw);
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace evsched
