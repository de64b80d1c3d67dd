#include "evsched/cli.hpp"

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "evsched/artifacts.hpp"
#include "evsched/config.hpp"
#include "evsched/dqn.hpp"
#include "evsched/evalreport.hpp"
#include "evsched/oracle.hpp"
#include "evsched/synth.hpp"

namespace evsched::cli {

namespace {

struct CommonState {
    std::string config_path;
    RunConfig cfg;

    void resolve() {
        if (!config_path.empty()) {
            // File values form the base layer; flags given on the command
            // line win over them.
            RunConfig file_cfg = load_run_config(config_path);
            merge_flags_over(file_cfg);
            cfg = std::move(file_cfg);
        }
        if (flag_seed && !flag_agent_seed) cfg.agent.seed = *flag_seed;
        if (flag_agent_seed) cfg.agent.seed = *flag_agent_seed;
    }

    // Flags recorded as optionals so "flag was given" is distinguishable.
    std::optional<std::string> flag_data, flag_model, flag_report, flag_profile, flag_stats,
        flag_schedules, flag_out, flag_gap_policy, flag_policy;
    std::optional<std::uint64_t> flag_seed, flag_agent_seed;
    std::optional<int> flag_days, flag_epochs;
    std::optional<double> flag_split, flag_min_ev, flag_pv_peak, flag_ev_min, flag_ev_max;

    void merge_flags_over(RunConfig& target) {
        if (flag_data) target.paths.data = *flag_data;
        if (flag_model) target.paths.model = *flag_model;
        if (flag_report) target.paths.report = *flag_report;
        if (flag_profile) target.paths.profile = *flag_profile;
        if (flag_stats) target.paths.stats = *flag_stats;
        if (flag_schedules) target.paths.schedules = *flag_schedules;
        if (flag_out) target.paths.out = *flag_out;
        if (flag_seed) target.seed = *flag_seed;
        if (flag_days) target.synth_days = *flag_days;
        if (flag_epochs) target.agent.epochs = *flag_epochs;
        if (flag_split) target.split_fraction = *flag_split;
        if (flag_min_ev) target.min_ev_kw = *flag_min_ev;
        if (flag_pv_peak) target.synth_pv_peak_kw = *flag_pv_peak;
        if (flag_ev_min) target.synth_ev_daily_min_kw = *flag_ev_min;
        if (flag_ev_max) target.synth_ev_daily_max_kw = *flag_ev_max;
        if (flag_gap_policy) {
            target.gap_policy =
                *flag_gap_policy == "zero-fill" ? GapPolicy::ZeroFill : GapPolicy::Reject;
        }
    }
};

std::string require(const std::string& value, const char* what) {
    if (value.empty()) {
        throw std::invalid_argument(std::string("missing required path: ") + what);
    }
    return value;
}

int cmd_ingest(CommonState& st) {
    st.resolve();
    const IngestResult result =
        parse_meter_csv(require(st.cfg.paths.data, "--input"), st.cfg.gap_policy);
    std::printf("parsed %zu complete day(s), dropped %d incomplete day(s), filled %d slot(s)\n",
                result.episodes.size(), result.dropped_days, result.filled_slots);
    double ev_days = 0;
    for (const Episode& ep : result.episodes) {
        if (ep.p_day_ev > st.cfg.min_ev_kw) ++ev_days;
    }
    std::printf("days with EV charging above %g kW: %g\n", st.cfg.min_ev_kw, ev_days);
    if (!st.cfg.paths.out.empty()) {
        write_meter_csv(st.cfg.paths.out, result.episodes);
        write_provenance_sidecar(st.cfg.paths.out, st.cfg);
        std::printf("wrote canonical CSV to %s\n", st.cfg.paths.out.c_str());
    }
    return 0;
}

int cmd_synth(CommonState& st) {
    st.resolve();
    const std::vector<Episode> episodes = synth_generate(st.cfg.synth_config());
    const std::string out = require(st.cfg.paths.out, "--out");
    write_meter_csv(out, episodes);
    write_provenance_sidecar(out, st.cfg);
    std::printf("wrote %zu synthetic day(s) to %s\n", episodes.size(), out.c_str());
    return 0;
}

int cmd_analyze(CommonState& st) {
    st.resolve();
    const IngestResult data =
        parse_meter_csv(require(st.cfg.paths.data, "--input"), st.cfg.gap_policy);
    if (data.episodes.empty()) throw std::runtime_error("no complete days in input");
    const TouSchedule tariff = st.cfg.resolve_tariff();
    const FlexibilityProfile flex = compute_flex_index(data.episodes);
    const CostProfile costs = compute_cost_profile(data.episodes, tariff);
    const std::string out = require(st.cfg.paths.out, "--out");
    write_profiles_json(out, flex, costs, st.cfg);
    std::printf("wrote profiles for %zu day(s) to %s\n", data.episodes.size(), out.c_str());
    return 0;
}

struct PreparedRun {
    TouSchedule tariff;
    FlexibilityProfile flex;
    CostProfile costs;
    CorpusSplit split;
    TrainContext ctx;

    PreparedRun(const RunConfig& cfg, const std::string& profile_path) : tariff(cfg.resolve_tariff()) {
        const IngestResult data = parse_meter_csv(require(cfg.paths.data, "--data"), cfg.gap_policy);
        split = build_training_corpus(data.episodes, cfg.min_ev_kw, cfg.split_fraction);
        if (!profile_path.empty()) {
            std::tie(flex, costs) = load_profiles_json(profile_path);
        } else {
            flex = compute_flex_index(split.train);
            costs = compute_cost_profile(split.train, tariff);
        }
        ctx.flex = &flex;
        ctx.costs = &costs;
        ctx.tariff = &tariff;
        ctx.battery = cfg.battery;
        ctx.weights = cfg.weights;
        ctx.scales = compute_feature_scales(split.train, tariff);
    }
};

int cmd_train(CommonState& st) {
    st.resolve();
    PreparedRun run(st.cfg, st.cfg.paths.profile);
    std::printf("training on %zu day(s), testing on %zu day(s), %d epoch(s)\n",
                run.split.train.size(), run.split.test.size(), st.cfg.agent.epochs);
    const TrainResult result = train(run.split.train, run.ctx, st.cfg.agent);
    save_network(require(st.cfg.paths.model, "--model-out"), result.net);
    write_provenance_sidecar(st.cfg.paths.model, st.cfg);
    if (!st.cfg.paths.stats.empty()) {
        write_stats_csv(st.cfg.paths.stats, result.stats);
        write_provenance_sidecar(st.cfg.paths.stats, st.cfg);
    }
    if (!result.stats.empty()) {
        std::printf("final epoch: epsilon %.3f, mean loss %.5f, mean greedy return %.3f\n",
                    result.stats.back().epsilon, result.stats.back().mean_loss,
                    result.stats.back().mean_greedy_return);
    }
    std::printf("saved model to %s\n", st.cfg.paths.model.c_str());
    return 0;
}

int cmd_oracle(CommonState& st) {
    st.resolve();
    PreparedRun run(st.cfg, st.cfg.paths.profile);
    std::vector<Episode> all = run.split.train;
    all.insert(all.end(), run.split.test.begin(), run.split.test.end());
    const EvalReport report = evaluate(PolicyKind::Oracle, all, run.ctx);
    const std::string out = require(st.cfg.paths.out, "--out");
    write_schedules_csv(out, report, all, run.tariff);
    write_provenance_sidecar(out, st.cfg);
    std::printf("%s", render_savings_table(report).c_str());
    std::printf("wrote oracle schedules for %zu day(s) to %s\n", all.size(), out.c_str());
    return 0;
}

int cmd_eval(CommonState& st) {
    st.resolve();
    PreparedRun run(st.cfg, st.cfg.paths.profile);

    PolicyKind policy = PolicyKind::Dqn;
    if (st.flag_policy) {
        const std::string& p = *st.flag_policy;
        policy = p == "oracle" ? PolicyKind::Oracle
                               : (p == "metered" ? PolicyKind::Metered : PolicyKind::Dqn);
    }
    NetworkParams net;
    const NetworkParams* net_ptr = nullptr;
    if (policy == PolicyKind::Dqn) {
        net = load_network(require(st.cfg.paths.model, "--model"));
        net_ptr = &net;
    }
    const EvalReport report = evaluate(policy, run.split.test, run.ctx, net_ptr);
    std::printf("%s", render_savings_table(report).c_str());
    if (!st.cfg.paths.report.empty()) {
        write_report_json(st.cfg.paths.report, report, st.cfg);
        std::printf("wrote report to %s\n", st.cfg.paths.report.c_str());
    }
    if (!st.cfg.paths.schedules.empty()) {
        write_schedules_csv(st.cfg.paths.schedules, report, run.split.test, run.tariff);
        write_provenance_sidecar(st.cfg.paths.schedules, st.cfg);
        std::printf("wrote schedules to %s\n", st.cfg.paths.schedules.c_str());
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"EV charging scheduler: data analysis, DQN training, exact DP benchmark"};
    app.require_subcommand(1);

    CommonState st;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", st.config_path, "JSON config file; flags override its values");
        sub->add_option("--seed", st.flag_seed, "master RNG seed");
    };

    CLI::App* ingest = app.add_subcommand("ingest", "parse and validate a meter CSV");
    add_common(ingest);
    ingest->add_option("--input", st.flag_data, "meter CSV path")->required();
    ingest->add_option("--gap-policy", st.flag_gap_policy, "reject|zero-fill")
        ->check(CLI::IsMember({"reject", "zero-fill"}));
    ingest->add_option("--min-ev-kw", st.flag_min_ev, "EV-day threshold for the summary");
    ingest->add_option("--out", st.flag_out, "re-emit parsed days as canonical CSV");

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic household CSV");
    add_common(synth);
    synth->add_option("--days", st.flag_days, "number of days");
    synth->add_option("--out", st.flag_out, "output CSV path")->required();
    synth->add_option("--pv-peak-kw", st.flag_pv_peak, "rooftop PV peak power");
    synth->add_option("--ev-daily-min-kw", st.flag_ev_min, "daily EV kW-sum lower bound");
    synth->add_option("--ev-daily-max-kw", st.flag_ev_max, "daily EV kW-sum upper bound");

    CLI::App* analyze = app.add_subcommand("analyze", "compute flexibility and cost profiles");
    add_common(analyze);
    analyze->add_option("--input", st.flag_data, "meter CSV path")->required();
    analyze->add_option("--gap-policy", st.flag_gap_policy, "reject|zero-fill")
        ->check(CLI::IsMember({"reject", "zero-fill"}));
    analyze->add_option("--out", st.flag_out, "profile JSON path")->required();

    CLI::App* train_cmd = app.add_subcommand("train", "train the DQN agent");
    add_common(train_cmd);
    train_cmd->add_option("--data", st.flag_data, "meter CSV path")->required();
    train_cmd->add_option("--profile", st.flag_profile, "profile JSON (default: from train split)");
    train_cmd->add_option("--model-out", st.flag_model, "model JSON output path")->required();
    train_cmd->add_option("--stats-out", st.flag_stats, "per-epoch stats CSV path");
    train_cmd->add_option("--epochs", st.flag_epochs, "training epochs");
    train_cmd->add_option("--split-fraction", st.flag_split, "chronological train fraction");
    train_cmd->add_option("--agent-seed", st.flag_agent_seed, "agent seed (default: master seed)");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact DP schedules for every day");
    add_common(oracle_cmd);
    oracle_cmd->add_option("--data", st.flag_data, "meter CSV path")->required();
    oracle_cmd->add_option("--profile", st.flag_profile, "profile JSON (default: from train split)");
    oracle_cmd->add_option("--out", st.flag_out, "schedule CSV output path")->required();
    oracle_cmd->add_option("--split-fraction", st.flag_split, "chronological train fraction");

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a policy on the test split");
    add_common(eval_cmd);
    eval_cmd->add_option("--data", st.flag_data, "meter CSV path")->required();
    eval_cmd->add_option("--model", st.flag_model, "trained model JSON");
    eval_cmd->add_option("--profile", st.flag_profile, "profile JSON (default: from train split)");
    eval_cmd->add_option("--policy", st.flag_policy, "dqn|oracle|metered")
        ->check(CLI::IsMember({"dqn", "oracle", "metered"}));
    eval_cmd->add_option("--report", st.flag_report, "report JSON output path");
    eval_cmd->add_option("--schedules", st.flag_schedules, "schedule CSV output path");
    eval_cmd->add_option("--split-fraction", st.flag_split, "chronological train fraction");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        st.merge_flags_over(st.cfg);
        if (ingest->parsed()) return cmd_ingest(st);
        if (synth->parsed()) return cmd_synth(st);
        if (analyze->parsed()) return cmd_analyze(st);
        if (train_cmd->parsed()) return cmd_train(st);
        if (oracle_cmd->parsed()) return cmd_oracle(st);
        if (eval_cmd->parsed()) return cmd_eval(st);
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace evsched::cli
