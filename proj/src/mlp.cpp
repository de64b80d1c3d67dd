#include "evsched/mlp.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "evsched/rng.hpp"

namespace evsched {

namespace {

void check_shapes(const NetworkParams& net, std::size_t input_size) {
    if (net.layers.empty()) throw std::invalid_argument("network has no layers");
    if (input_size != static_cast<std::size_t>(net.layers.front().in_size)) {
        throw std::invalid_argument("input size does not match the first layer");
    }
}

// Affine + activation for one layer; pre and post may alias distinct buffers.
void layer_forward(const Layer& layer, const std::vector<double>& in, std::vector<double>& pre,
                   std::vector<double>& post) {
    pre.resize(layer.out_size);
    post.resize(layer.out_size);
    for (int o = 0; o < layer.out_size; ++o) {
        double acc = layer.biases[o];
        const double* w = layer.weights.data() + static_cast<std::size_t>(o) * layer.in_size;
        for (int i = 0; i < layer.in_size; ++i) acc += w[i] * in[i];
        pre[o] = acc;
        post[o] = layer.activation == Activation::ReLU ? (acc > 0.0 ? acc : 0.0) : acc;
    }
}

}  // namespace

std::vector<int> NetworkParams::layer_sizes() const {
    std::vector<int> sizes;
    if (layers.empty()) return sizes;
    sizes.push_back(layers.front().in_size);
    for (const Layer& l : layers) sizes.push_back(l.out_size);
    return sizes;
}

Gradients Gradients::zeros_like(const NetworkParams& net) {
    Gradients g;
    g.layers.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        g.layers[l].weights.assign(net.layers[l].weights.size(), 0.0);
        g.layers[l].biases.assign(net.layers[l].biases.size(), 0.0);
    }
    return g;
}

void Gradients::accumulate(const Gradients& other, double scale) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t i = 0; i < layers[l].weights.size(); ++i) {
            layers[l].weights[i] += scale * other.layers[l].weights[i];
        }
        for (std::size_t i = 0; i < layers[l].biases.size(); ++i) {
            layers[l].biases[i] += scale * other.layers[l].biases[i];
        }
    }
}

void Gradients::reset() {
    for (auto& l : layers) {
        std::fill(l.weights.begin(), l.weights.end(), 0.0);
        std::fill(l.biases.begin(), l.biases.end(), 0.0);
    }
}

NetworkParams init_network(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) throw std::invalid_argument("need at least input and output sizes");
    for (int s : layer_sizes) {
        if (s < 1) throw std::invalid_argument("layer sizes must be positive");
    }
    Rng rng(seed);
    NetworkParams net;
    net.layers.resize(layer_sizes.size() - 1);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        Layer& layer = net.layers[l];
        layer.in_size = layer_sizes[l];
        layer.out_size = layer_sizes[l + 1];
        layer.activation = l + 1 == net.layers.size() ? Activation::Linear : Activation::ReLU;
        const double bound = std::sqrt(6.0 / static_cast<double>(layer.in_size));
        layer.weights.resize(static_cast<std::size_t>(layer.in_size) * layer.out_size);
        for (double& w : layer.weights) w = rng.uniform(-bound, bound);
        layer.biases.assign(layer.out_size, 0.0);
    }
    return net;
}

std::vector<double> forward(const NetworkParams& net, std::span<const double> input) {
    check_shapes(net, input.size());
    std::vector<double> current(input.begin(), input.end());
    std::vector<double> pre, post;
    for (const Layer& layer : net.layers) {
        layer_forward(layer, current, pre, post);
        current = post;
    }
    return current;
}

double backward_accumulate(const NetworkParams& net, std::span<const double> input,
                           int action_index, double td_target, double scale, Gradients& into) {
    check_shapes(net, input.size());
    const std::size_t n_layers = net.layers.size();
    if (action_index < 0 || action_index >= net.layers.back().out_size) {
        throw std::invalid_argument("action index outside the output layer");
    }

    // Forward pass keeping every layer's input and pre-activation.
    std::vector<std::vector<double>> inputs(n_layers);
    std::vector<std::vector<double>> pres(n_layers);
    std::vector<double> current(input.begin(), input.end());
    for (std::size_t l = 0; l < n_layers; ++l) {
        inputs[l] = current;
        std::vector<double> post;
        layer_forward(net.layers[l], current, pres[l], post);
        current = std::move(post);
    }

    const double q = current[action_index];
    const double diff = q - td_target;
    const double loss = diff * diff;

    // dL/d(output): nonzero only at the selected head.
    std::vector<double> delta(net.layers.back().out_size, 0.0);
    delta[action_index] = 2.0 * diff;

    for (std::size_t l = n_layers; l-- > 0;) {
        const Layer& layer = net.layers[l];
        auto& g = into.layers[l];
        // Through the activation.
        if (layer.activation == Activation::ReLU) {
            for (int o = 0; o < layer.out_size; ++o) {
                if (pres[l][o] <= 0.0) delta[o] = 0.0;
            }
        }
        std::vector<double> prev_delta;
        if (l > 0) prev_delta.assign(layer.in_size, 0.0);
        for (int o = 0; o < layer.out_size; ++o) {
            const double d = delta[o];
            g.biases[o] += scale * d;
            const std::size_t row = static_cast<std::size_t>(o) * layer.in_size;
            const double* w = layer.weights.data() + row;
            double* gw = g.weights.data() + row;
            if (d != 0.0) {
                for (int i = 0; i < layer.in_size; ++i) {
                    gw[i] += scale * d * inputs[l][i];
                    if (l > 0) prev_delta[i] += d * w[i];
                }
            }
        }
        if (l > 0) delta = std::move(prev_delta);
    }
    return loss;
}

BackwardResult backward(const NetworkParams& net, std::span<const double> input, int action_index,
                        double td_target) {
    BackwardResult result;
    result.grads = Gradients::zeros_like(net);
    result.loss = backward_accumulate(net, input, action_index, td_target, 1.0, result.grads);
    return result;
}

AdamState AdamState::zeros_like(const NetworkParams& net) {
    AdamState s;
    const Gradients z = Gradients::zeros_like(net);
    s.m = z.layers;
    s.v = z.layers;
    return s;
}

void apply_update(NetworkParams& net, const Gradients& grads, AdamState& state, double lr) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    state.step_count += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step_count));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step_count));

    auto update_span = [&](std::vector<double>& params, const std::vector<double>& g,
                           std::vector<double>& m, std::vector<double>& v) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
            v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
            const double m_hat = m[i] / bc1;
            const double v_hat = v[i] / bc2;
            params[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
        }
    };

    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        update_span(net.layers[l].weights, grads.layers[l].weights, state.m[l].weights,
                    state.v[l].weights);
        update_span(net.layers[l].biases, grads.layers[l].biases, state.m[l].biases,
                    state.v[l].biases);
    }
}

namespace {

constexpr int kFormatVersion = 1;

const char* activation_name(Activation a) {
    return a == Activation::ReLU ? "relu" : "linear";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::ReLU;
    if (name == "linear") return Activation::Linear;
    throw std::invalid_argument("unknown activation '" + name + "'");
}

}  // namespace

std::string to_json(const NetworkParams& net) {
    nlohmann::json doc;
    doc["format_version"] = kFormatVersion;
    doc["layer_sizes"] = net.layer_sizes();
    nlohmann::json layers = nlohmann::json::array();
    for (const Layer& l : net.layers) {
        nlohmann::json jl;
        jl["in_size"] = l.in_size;
        jl["out_size"] = l.out_size;
        jl["activation"] = activation_name(l.activation);
        jl["weights"] = l.weights;
        jl["biases"] = l.biases;
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);
    return doc.dump(2) + "\n";
}

NetworkParams network_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.at("format_version").get<int>() != kFormatVersion) {
        throw std::invalid_argument("unsupported model format version");
    }
    NetworkParams net;
    for (const auto& jl : doc.at("layers")) {
        Layer l;
        l.in_size = jl.at("in_size").get<int>();
        l.out_size = jl.at("out_size").get<int>();
        l.activation = activation_from_name(jl.at("activation").get<std::string>());
        l.weights = jl.at("weights").get<std::vector<double>>();
        l.biases = jl.at("biases").get<std::vector<double>>();
        if (l.weights.size() != static_cast<std::size_t>(l.in_size) * l.out_size ||
            l.biases.size() != static_cast<std::size_t>(l.out_size)) {
            throw std::invalid_argument("model layer shape mismatch");
        }
        net.layers.push_back(std::move(l));
    }
    if (net.layers.empty()) throw std::invalid_argument("model has no layers");
    return net;
}

void save_network(const std::string& path, const NetworkParams& net) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << to_json(net);
    if (!out) throw std::runtime_error("write failed: " + path);
}

NetworkParams load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return network_from_json(ss.str());
}

}  // namespace evsched
