#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evsched/dqn.hpp"
#include "evsched/env.hpp"
#include "evsched/meter.hpp"
#include "evsched/synth.hpp"
#include "evsched/tariff.hpp"

namespace evsched {

// Resolved run configuration: file defaults overlaid by CLI flags. Every
// artifact written by a run embeds the resolved form for provenance.
struct RunConfig {
    struct Paths {
        std::string data;
        std::string model;
        std::string report;
        std::string profile;
        std::string stats;
        std::string schedules;
        std::string out;
    } paths;

    BatteryConfig battery;
    AgentConfig agent;
    RewardWeights weights;
    std::optional<std::vector<TariffBandSpec>> tariff_override;

    double split_fraction = 0.8;
    double min_ev_kw = 0.0;
    GapPolicy gap_policy = GapPolicy::Reject;
    std::uint64_t seed = 1;

    // Synthetic-generator knobs (synth subcommand).
    int synth_days = 30;
    double synth_pv_peak_kw = 2.5;
    double synth_ev_daily_min_kw = 30.0;
    double synth_ev_daily_max_kw = 48.0;

    TouSchedule resolve_tariff() const;
    SynthConfig synth_config() const;
};

// Parses a JSON config file; unknown keys are rejected so typos fail loudly.
RunConfig load_run_config(const std::string& path);

// Applies a parsed JSON document on top of an existing config (file layer).
void apply_config_json(RunConfig& cfg, const std::string& json_text, const std::string& origin);

// Serializes the resolved config (for artifact provenance).
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace evsched
