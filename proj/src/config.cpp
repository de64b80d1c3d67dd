#include "evsched/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace evsched {

using nlohmann::json;

TouSchedule RunConfig::resolve_tariff() const {
    return tariff_override ? make_schedule(*tariff_override) : default_austin_2018();
}

SynthConfig RunConfig::synth_config() const {
    SynthConfig s;
    s.seed = seed;
    s.n_days = synth_days;
    s.pv_peak_kw = synth_pv_peak_kw;
    s.ev_daily_min_kw = synth_ev_daily_min_kw;
    s.ev_daily_max_kw = synth_ev_daily_max_kw;
    return s;
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) {
            if (it.key() == k) ok = true;
        }
        if (!ok) throw std::invalid_argument("unknown config key '" + it.key() + "' in " + where);
    }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

void apply_config_json(RunConfig& cfg, const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("invalid JSON in " + origin + ": " + e.what());
    }
    reject_unknown(doc,
                   {"paths", "battery", "agent", "weights", "tariff", "split_fraction", "min_ev_kw",
                    "gap_policy", "seed", "synth"},
                   origin);

    if (doc.contains("paths")) {
        const json& p = doc["paths"];
        reject_unknown(p, {"data", "model", "report", "profile", "stats", "schedules", "out"},
                       origin + ".paths");
        read_if(p, "data", cfg.paths.data);
        read_if(p, "model", cfg.paths.model);
        read_if(p, "report", cfg.paths.report);
        read_if(p, "profile", cfg.paths.profile);
        read_if(p, "stats", cfg.paths.stats);
        read_if(p, "schedules", cfg.paths.schedules);
        read_if(p, "out", cfg.paths.out);
    }
    if (doc.contains("battery")) {
        const json& b = doc["battery"];
        reject_unknown(b, {"capacity_kwh", "efficiency", "soc_max", "p_high_kw", "p_low_kw",
                           "soc_knee"},
                       origin + ".battery");
        read_if(b, "capacity_kwh", cfg.battery.capacity_kwh);
        read_if(b, "efficiency", cfg.battery.efficiency);
        read_if(b, "soc_max", cfg.battery.soc_max);
        read_if(b, "p_high_kw", cfg.battery.p_high_kw);
        read_if(b, "p_low_kw", cfg.battery.p_low_kw);
        read_if(b, "soc_knee", cfg.battery.soc_knee);
    }
    if (doc.contains("agent")) {
        const json& a = doc["agent"];
        reject_unknown(a,
                       {"epochs", "gamma", "lr", "batch_size", "replay_capacity", "min_replay",
                        "target_sync_every", "eps_start", "eps_end", "eps_decay_fraction",
                        "hidden_sizes", "seed"},
                       origin + ".agent");
        read_if(a, "epochs", cfg.agent.epochs);
        read_if(a, "gamma", cfg.agent.gamma);
        read_if(a, "lr", cfg.agent.lr);
        read_if(a, "batch_size", cfg.agent.batch_size);
        read_if(a, "replay_capacity", cfg.agent.replay_capacity);
        read_if(a, "min_replay", cfg.agent.min_replay);
        read_if(a, "target_sync_every", cfg.agent.target_sync_every);
        read_if(a, "eps_start", cfg.agent.eps_start);
        read_if(a, "eps_end", cfg.agent.eps_end);
        read_if(a, "eps_decay_fraction", cfg.agent.eps_decay_fraction);
        read_if(a, "hidden_sizes", cfg.agent.hidden_sizes);
        read_if(a, "seed", cfg.agent.seed);
    }
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        reject_unknown(w, {"consumption", "flexibility", "cost", "soc_guard"}, origin + ".weights");
        read_if(w, "consumption", cfg.weights.consumption);
        read_if(w, "flexibility", cfg.weights.flexibility);
        read_if(w, "cost", cfg.weights.cost);
        read_if(w, "soc_guard", cfg.weights.soc_guard);
    }
    if (doc.contains("tariff")) {
        std::vector<TariffBandSpec> bands;
        for (const json& jb : doc["tariff"]) {
            reject_unknown(jb, {"start", "end", "price", "period"}, origin + ".tariff[]");
            TariffBandSpec spec;
            spec.start = jb.at("start").get<std::string>();
            spec.end = jb.at("end").get<std::string>();
            spec.price = jb.at("price").get<double>();
            read_if(jb, "period", spec.period);
            bands.push_back(std::move(spec));
        }
        cfg.tariff_override = std::move(bands);
    }
    read_if(doc, "split_fraction", cfg.split_fraction);
    read_if(doc, "min_ev_kw", cfg.min_ev_kw);
    if (doc.contains("gap_policy")) {
        const std::string policy = doc["gap_policy"].get<std::string>();
        if (policy == "reject") {
            cfg.gap_policy = GapPolicy::Reject;
        } else if (policy == "zero-fill") {
            cfg.gap_policy = GapPolicy::ZeroFill;
        } else {
            throw std::invalid_argument("gap_policy must be 'reject' or 'zero-fill'");
        }
    }
    if (doc.contains("seed")) {
        cfg.seed = doc["seed"].get<std::uint64_t>();
        cfg.agent.seed = cfg.seed;
    }
    if (doc.contains("synth")) {
        const json& s = doc["synth"];
        reject_unknown(s, {"days", "pv_peak_kw", "ev_daily_min_kw", "ev_daily_max_kw"},
                       origin + ".synth");
        read_if(s, "days", cfg.synth_days);
        read_if(s, "pv_peak_kw", cfg.synth_pv_peak_kw);
        read_if(s, "ev_daily_min_kw", cfg.synth_ev_daily_min_kw);
        read_if(s, "ev_daily_max_kw", cfg.synth_ev_daily_max_kw);
    }
    if (doc.contains("agent") && doc["agent"].contains("seed")) {
        cfg.agent.seed = doc["agent"]["seed"].get<std::uint64_t>();
    }
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig cfg;
    apply_config_json(cfg, ss.str(), path);
    return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
    json doc;
    doc["paths"] = {{"data", cfg.paths.data},         {"model", cfg.paths.model},
                    {"report", cfg.paths.report},     {"profile", cfg.paths.profile},
                    {"stats", cfg.paths.stats},       {"schedules", cfg.paths.schedules},
                    {"out", cfg.paths.out}};
    doc["battery"] = {{"capacity_kwh", cfg.battery.capacity_kwh},
                      {"efficiency", cfg.battery.efficiency},
                      {"soc_max", cfg.battery.soc_max},
                      {"p_high_kw", cfg.battery.p_high_kw},
                      {"p_low_kw", cfg.battery.p_low_kw},
                      {"soc_knee", cfg.battery.soc_knee}};
    doc["agent"] = {{"epochs", cfg.agent.epochs},
                    {"gamma", cfg.agent.gamma},
                    {"lr", cfg.agent.lr},
                    {"batch_size", cfg.agent.batch_size},
                    {"replay_capacity", cfg.agent.replay_capacity},
                    {"min_replay", cfg.agent.min_replay},
                    {"target_sync_every", cfg.agent.target_sync_every},
                    {"eps_start", cfg.agent.eps_start},
                    {"eps_end", cfg.agent.eps_end},
                    {"eps_decay_fraction", cfg.agent.eps_decay_fraction},
                    {"hidden_sizes", cfg.agent.hidden_sizes},
                    {"seed", cfg.agent.seed}};
    doc["weights"] = {{"consumption", cfg.weights.consumption},
                      {"flexibility", cfg.weights.flexibility},
                      {"cost", cfg.weights.cost},
                      {"soc_guard", cfg.weights.soc_guard}};
    if (cfg.tariff_override) {
        json bands = json::array();
        for (const TariffBandSpec& b : *cfg.tariff_override) {
            json jb = {{"start", b.start}, {"end", b.end}, {"price", b.price}};
            if (!b.period.empty()) jb["period"] = b.period;
            bands.push_back(std::move(jb));
        }
        doc["tariff"] = std::move(bands);
    }
    doc["split_fraction"] = cfg.split_fraction;
    doc["min_ev_kw"] = cfg.min_ev_kw;
    doc["gap_policy"] = cfg.gap_policy == GapPolicy::Reject ? "reject" : "zero-fill";
    doc["seed"] = cfg.seed;
    doc["synth"] = {{"days", cfg.synth_days},
                    {"pv_peak_kw", cfg.synth_pv_peak_kw},
                    {"ev_daily_min_kw", cfg.synth_ev_daily_min_kw},
                    {"ev_daily_max_kw", cfg.synth_ev_daily_max_kw}};
    return doc.dump(2);
}

}  // namespace evsched
