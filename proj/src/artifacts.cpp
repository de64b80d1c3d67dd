#include "evsched/artifacts.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace evsched {

using nlohmann::json;

namespace {

json provenance_block(const RunConfig& cfg) {
    json p;
    p["seed"] = cfg.seed;
    p["config"] = json::parse(run_config_to_json(cfg));
    return p;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json quantiles_block(double q25, double q50, double q75) {
    return json{{"q25", q25}, {"q50", q50}, {"q75", q75}};
}

}  // namespace

std::string profiles_to_json(const FlexibilityProfile& flex, const CostProfile& costs,
                             const RunConfig& cfg) {
    json doc;
    doc["flexibility"] = {{"index", flex.index},
                          {"quantiles", quantiles_block(flex.q25, flex.q50, flex.q75)}};
    doc["cost"] = {{"avg_cost", costs.avg_cost},
                   {"quantiles", quantiles_block(costs.q25, costs.q50, costs.q75)}};
    doc["provenance"] = provenance_block(cfg);
    return doc.dump(2) + "\n";
}

void write_profiles_json(const std::string& path, const FlexibilityProfile& flex,
                         const CostProfile& costs, const RunConfig& cfg) {
    write_text(path, profiles_to_json(flex, costs, cfg));
}

std::pair<FlexibilityProfile, CostProfile> profiles_from_json(const std::string& text) {
    const json doc = json::parse(text);
    FlexibilityProfile flex;
    CostProfile costs;
    const auto& jf = doc.at("flexibility");
    const auto& jc = doc.at("cost");
    const auto index = jf.at("index").get<std::vector<double>>();
    const auto avg = jc.at("avg_cost").get<std::vector<double>>();
    if (index.size() != flex.index.size() || avg.size() != costs.avg_cost.size()) {
        throw std::invalid_argument("profile arrays must have 96 entries");
    }
    std::copy(index.begin(), index.end(), flex.index.begin());
    std::copy(avg.begin(), avg.end(), costs.avg_cost.begin());
    flex.q25 = jf.at("quantiles").at("q25").get<double>();
    flex.q50 = jf.at("quantiles").at("q50").get<double>();
    flex.q75 = jf.at("quantiles").at("q75").get<double>();
    costs.q25 = jc.at("quantiles").at("q25").get<double>();
    costs.q50 = jc.at("quantiles").at("q50").get<double>();
    costs.q75 = jc.at("quantiles").at("q75").get<double>();
    return {flex, costs};
}

std::pair<FlexibilityProfile, CostProfile> load_profiles_json(const std::string& path) {
    return profiles_from_json(read_text(path));
}

std::string report_to_json(const EvalReport& report, const RunConfig& cfg) {
    json days = json::array();
    for (const DayResult& d : report.days) {
        json jd;
        jd["date"] = format_date_iso(d.date);
        jd["metered_cost"] = d.metered_cost;
        jd["optimized_cost"] = d.optimized_cost;
        jd["savings_pct"] = d.savings_pct ? json(*d.savings_pct) : json(nullptr);
        jd["savings_abs"] = d.savings_abs;
        jd["metered_ev_kw"] = d.metered_ev_kw;
        jd["optimized_ev_kw"] = d.optimized_ev_kw;
        jd["energy_constraint_ok"] = d.energy_constraint_ok;
        jd["per_period_kw"] = {
            {"metered",
             {{"off_peak", d.metered_period.off_peak_kw},
              {"mid_peak", d.metered_period.mid_peak_kw},
              {"on_peak", d.metered_period.on_peak_kw}}},
            {"optimized",
             {{"off_peak", d.optimized_period.off_peak_kw},
              {"mid_peak", d.optimized_period.mid_peak_kw},
              {"on_peak", d.optimized_period.on_peak_kw}}},
        };
        days.push_back(std::move(jd));
    }

    const char* policy = report.policy == PolicyKind::Metered
                             ? "metered"
                             : (report.policy == PolicyKind::Oracle ? "oracle" : "dqn");
    json doc;
    doc["policy"] = policy;
    doc["days"] = std::move(days);
    doc["aggregate"] = {
        {"mean_metered_cost", report.aggregate.mean_metered_cost},
        {"mean_optimized_cost", report.aggregate.mean_optimized_cost},
        {"savings_pct",
         report.aggregate.savings_pct ? json(*report.aggregate.savings_pct) : json(nullptr)},
        {"mean_savings_abs", report.aggregate.mean_savings_abs},
        {"days_energy_ok", report.aggregate.days_energy_ok},
        {"days_total", report.aggregate.days_total},
    };
    doc["provenance"] = provenance_block(cfg);
    return doc.dump(2) + "\n";
}

void write_report_json(const std::string& path, const EvalReport& report, const RunConfig& cfg) {
    write_text(path, report_to_json(report, cfg));
}

void write_provenance_sidecar(const std::string& artifact_path, const RunConfig& cfg) {
    json doc;
    doc["artifact"] = artifact_path;
    doc["provenance"] = provenance_block(cfg);
    write_text(artifact_path + ".provenance.json", doc.dump(2) + "\n");
}

}  // namespace evsched
