#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "evsched/env.hpp"
#include "evsched/mlp.hpp"
#include "evsched/rng.hpp"
#include "evsched/schedule.hpp"

namespace evsched {

struct Transition {
    std::array<double, 6> state{};
    int action = 0;
    double reward = 0.0;
    std::array<double, 6> next_state{};
    bool done = false;
};

// Fixed-capacity ring buffer with strict FIFO eviction.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(const Transition& t);
    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }
    // i = 0 addresses the oldest stored transition.
    const Transition& at(std::size_t i) const;
    const Transition& sample(Rng& rng) const;

private:
    std::size_t capacity_;
    std::size_t head_ = 0;  // next write position once full
    std::vector<Transition> data_;
};

struct AgentConfig {
    int epochs = 1000;
    double gamma = 0.99;
    double lr = 1e-3;
    int batch_size = 64;
    std::size_t replay_capacity = 50000;
    std::size_t min_replay = 1000;
    int target_sync_every = 500;  // gradient steps
    double eps_start = 1.0;
    double eps_end = 0.05;
    double eps_decay_fraction = 0.6;
    std::vector<int> hidden_sizes{64, 64};
    std::uint64_t seed = 1;
};

// Immutable inputs shared by training and evaluation.
struct TrainContext {
    const FlexibilityProfile* flex = nullptr;
    const CostProfile* costs = nullptr;
    const TouSchedule* tariff = nullptr;
    BatteryConfig battery;
    RewardWeights weights;
    FeatureScales scales;

    EpisodeContext for_episode(const Episode& ep) const {
        return EpisodeContext{&ep, flex, costs, tariff, battery, weights};
    }
};

// Epsilon-greedy over the two Q-values; exact ties resolve to Idle.
Action select_action(const NetworkParams& net, const std::array<double, 6>& state, double epsilon,
                     Rng& rng);

// Per-epoch exploration rate: linear decay from eps_start to eps_end over
// eps_decay_fraction of the epochs, then constant.
double epsilon_for_epoch(const AgentConfig& cfg, int epoch);

double td_target(double reward, const std::array<double, 6>& next_state, bool done,
                 const NetworkParams& target_net, double gamma);

struct EpochStats {
    int epoch = 0;
    double epsilon = 0.0;
    double mean_loss = 0.0;
    double mean_greedy_return = 0.0;  // over the training episodes
};

struct TrainResult {
    NetworkParams net;
    std::vector<EpochStats> stats;
};

// Observer invoked for every stored transition, with the raw pre-step state;
// used by tests to re-derive rewards independently.
using TransitionObserver =
    std::function<void(const EnvState&, Action, const Transition&, const EpisodeContext&)>;

// One epoch is a full seeded-shuffled pass over the training episodes; every
// environment step stores a transition and, once min_replay transitions
// exist, draws one batch and applies one Adam update against the target
// network. Deterministic per cfg.seed.
TrainResult train(const std::vector<Episode>& corpus, const TrainContext& ctx,
                  const AgentConfig& cfg, const TransitionObserver& observer = nullptr);

// Greedy (epsilon = 0) rollout of a trained network over one episode.
ScheduleSolution greedy_rollout(const NetworkParams& net, const Episode& episode,
                                const TrainContext& ctx);

void write_stats_csv(const std::string& path, const std::vector<EpochStats>& stats);

}  // namespace evsched
