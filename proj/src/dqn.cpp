#include "evsched/dqn.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace evsched {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("replay capacity must be positive");
    data_.reserve(std::min(capacity_, std::size_t{1} << 20));
}

void ReplayBuffer::push(const Transition& t) {
    if (data_.size() < capacity_) {
        data_.push_back(t);
        return;
    }
    data_[head_] = t;
    head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
    if (i >= data_.size()) throw std::out_of_range("replay index");
    return data_[(head_ + i) % data_.size()];
}

const Transition& ReplayBuffer::sample(Rng& rng) const {
    if (data_.empty()) throw std::logic_error("sampling an empty replay buffer");
    return data_[rng.index(data_.size())];
}

Action select_action(const NetworkParams& net, const std::array<double, 6>& state, double epsilon,
                     Rng& rng) {
    if (epsilon > 0.0 && rng.chance(epsilon)) {
        return rng.index(2) == 0 ? Action::Idle : Action::Charge;
    }
    const std::vector<double> q = forward(net, state);
    return q[1] > q[0] ? Action::Charge : Action::Idle;
}

double epsilon_for_epoch(const AgentConfig& cfg, int epoch) {
    const double decay_epochs = cfg.eps_decay_fraction * static_cast<double>(cfg.epochs);
    if (decay_epochs <= 0.0 || epoch >= decay_epochs) return cfg.eps_end;
    return cfg.eps_start +
           (cfg.eps_end - cfg.eps_start) * static_cast<double>(epoch) / decay_epochs;
}

double td_target(double reward, const std::array<double, 6>& next_state, bool done,
                 const NetworkParams& target_net, double gamma) {
    if (done) return reward;
    const std::vector<double> q = forward(target_net, next_state);
    return reward + gamma * std::max(q[0], q[1]);
}

namespace {

std::vector<int> network_sizes(const AgentConfig& cfg) {
    std::vector<int> sizes;
    sizes.push_back(6);
    for (int h : cfg.hidden_sizes) sizes.push_back(h);
    sizes.push_back(2);
    return sizes;
}

void validate(const AgentConfig& cfg) {
    if (cfg.epochs < 0) throw std::invalid_argument("epochs must be non-negative");
    if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) throw std::invalid_argument("gamma outside [0, 1]");
    if (cfg.batch_size < 1) throw std::invalid_argument("batch_size must be positive");
    if (cfg.eps_end > cfg.eps_start) throw std::invalid_argument("eps_end exceeds eps_start");
    if (cfg.min_replay == 0) throw std::invalid_argument("min_replay must be positive");
}

}  // namespace

TrainResult train(const std::vector<Episode>& corpus, const TrainContext& ctx,
                  const AgentConfig& cfg, const TransitionObserver& observer) {
    if (corpus.empty()) throw std::invalid_argument("training corpus is empty");
    validate(cfg);

    TrainResult result;
    result.net = init_network(network_sizes(cfg), cfg.seed);
    if (cfg.epochs == 0) return result;

    NetworkParams target = result.net;
    AdamState adam = AdamState::zeros_like(result.net);
    Gradients batch_grads = Gradients::zeros_like(result.net);
    ReplayBuffer buffer(cfg.replay_capacity);
    Rng rng(cfg.seed);

    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::int64_t grad_steps = 0;
    result.stats.reserve(cfg.epochs);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double epsilon = epsilon_for_epoch(cfg, epoch);
        rng.shuffle(order);

        double loss_sum = 0.0;
        std::int64_t loss_count = 0;
        for (std::size_t idx : order) {
            const Episode& episode = corpus[idx];
            const EpisodeContext ep_ctx = ctx.for_episode(episode);
            EnvState state = initial_state(ep_ctx);
            for (int t = 0; t < kSlotsPerDay; ++t) {
                const std::array<double, 6> obs = normalize(state, ctx.scales, episode.p_day_ev);
                const Action action = select_action(result.net, obs, epsilon, rng);
                const StepResult sr = step(state, action, ep_ctx);

                Transition tr;
                tr.state = obs;
                tr.action = static_cast<int>(action);
                tr.reward = sr.reward;
                tr.next_state = normalize(sr.next, ctx.scales, episode.p_day_ev);
                tr.done = sr.done;
                buffer.push(tr);
                if (observer) observer(state, action, tr, ep_ctx);
                state = sr.next;

                if (buffer.size() >= cfg.min_replay &&
                    buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                    batch_grads.reset();
                    double batch_loss = 0.0;
                    const double scale = 1.0 / static_cast<double>(cfg.batch_size);
                    for (int b = 0; b < cfg.batch_size; ++b) {
                        const Transition& s = buffer.sample(rng);
                        const double target_q =
                            td_target(s.reward, s.next_state, s.done, target, cfg.gamma);
                        batch_loss += backward_accumulate(result.net, s.state, s.action, target_q,
                                                          scale, batch_grads);
                    }
                    apply_update(result.net, batch_grads, adam, cfg.lr);
                    loss_sum += batch_loss * scale;
                    ++loss_count;
                    if (++grad_steps % cfg.target_sync_every == 0) target = result.net;
                }
            }
        }

        EpochStats es;
        es.epoch = epoch;
        es.epsilon = epsilon;
        es.mean_loss = loss_count > 0 ? loss_sum / static_cast<double>(loss_count) : 0.0;
        double return_sum = 0.0;
        for (const Episode& episode : corpus) {
            return_sum += greedy_rollout(result.net, episode, ctx).total_reward;
        }
        es.mean_greedy_return = return_sum / static_cast<double>(corpus.size());
        result.stats.push_back(es);
    }
    return result;
}

ScheduleSolution greedy_rollout(const NetworkParams& net, const Episode& episode,
                                const TrainContext& ctx) {
    const EpisodeContext ep_ctx = ctx.for_episode(episode);
    Rng unused(0);
    std::vector<std::uint8_t> actions;
    actions.reserve(kSlotsPerDay);
    EnvState state = initial_state(ep_ctx);
    for (int t = 0; t < kSlotsPerDay; ++t) {
        const std::array<double, 6> obs = normalize(state, ctx.scales, episode.p_day_ev);
        const Action action = select_action(net, obs, 0.0, unused);
        actions.push_back(static_cast<std::uint8_t>(action));
        state = step(state, action, ep_ctx).next;
    }
    return simulate_schedule(actions, ep_ctx);
}

void write_stats_csv(const std::string& path, const std::vector<EpochStats>& stats) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write stats CSV: " + path);
    out << "epoch,epsilon,mean_loss,mean_greedy_return\n";
    char buf[128];
    for (const EpochStats& s : stats) {
        std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g\n", s.epoch, s.epsilon, s.mean_loss,
                      s.mean_greedy_return);
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace evsched
