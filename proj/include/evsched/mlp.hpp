#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace evsched {

enum class Activation { ReLU, Linear };

// One dense layer; weights are row-major (out x in).
struct Layer {
    std::vector<double> weights;
    std::vector<double> biases;
    int in_size = 0;
    int out_size = 0;
    Activation activation = Activation::Linear;
};

// Dense feed-forward Q-network, f64 throughout. The output layer is always
// linear (Q-values are unbounded).
struct NetworkParams {
    std::vector<Layer> layers;

    std::vector<int> layer_sizes() const;
};

// Parameter-shaped gradient buffers.
struct Gradients {
    struct LayerGrads {
        std::vector<double> weights;
        std::vector<double> biases;
    };
    std::vector<LayerGrads> layers;

    static Gradients zeros_like(const NetworkParams& net);
    void accumulate(const Gradients& other, double scale);
    void reset();
};

// He-uniform initialization (bound sqrt(6/fan_in)), zero biases, ReLU hidden
// layers and a linear output layer; deterministic per seed.
NetworkParams init_network(const std::vector<int>& layer_sizes, std::uint64_t seed);

// Forward pass. Throws std::invalid_argument on an input size mismatch.
std::vector<double> forward(const NetworkParams& net, std::span<const double> input);

// Squared-error TD regression on one output head: loss = (Q[a] - target)^2.
// Gradients for the non-selected head are exactly zero.
struct BackwardResult {
    Gradients grads;
    double loss = 0.0;
};
BackwardResult backward(const NetworkParams& net, std::span<const double> input,
                        int action_index, double td_target);

// Same, but accumulates scaled gradients into an existing buffer (batch
// averaging without reallocating).
double backward_accumulate(const NetworkParams& net, std::span<const double> input,
                           int action_index, double td_target, double scale, Gradients& into);

// Adam optimizer state (beta1=0.9, beta2=0.999, eps=1e-8); persists across
// update calls.
struct AdamState {
    std::vector<Gradients::LayerGrads> m;
    std::vector<Gradients::LayerGrads> v;
    std::int64_t step_count = 0;

    static AdamState zeros_like(const NetworkParams& net);
};

// One Adam update in place.
void apply_update(NetworkParams& net, const Gradients& grads, AdamState& state, double lr);

// Versioned JSON weight serialization; values round-trip bit-exactly.
std::string to_json(const NetworkParams& net);
NetworkParams network_from_json(const std::string& text);
void save_network(const std::string& path, const NetworkParams& net);
NetworkParams load_network(const std::string& path);

}  // namespace evsched
