#include "spamnet/network.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "spamnet/errors.hpp"
#include "spamnet/rng.hpp"

namespace spamnet {

Network::Network(std::vector<std::size_t> layer_sizes, ActivationSpec activation)
    : layer_sizes_(std::move(layer_sizes)), activation_(activation) {
    if (layer_sizes_.size() < 3) {
        throw ShapeError("network needs an input layer, at least one hidden layer and an output layer");
    }
    for (std::size_t n : layer_sizes_) {
        if (n == 0) throw ShapeError("zero-sized layer");
    }
    if (activation_.steepness <= 0.0) {
        throw ConfigError("activation steepness must be > 0");
    }
    weights_.resize(layer_sizes_.size() - 1);
    biases_.resize(layer_sizes_.size() - 1);
    for (std::size_t l = 1; l < layer_sizes_.size(); ++l) {
        weights_[l - 1].assign(layer_sizes_[l] * layer_sizes_[l - 1], 0.0);
        biases_[l - 1].assign(layer_sizes_[l], 0.0);
    }
}

Network Network::initialize(std::vector<std::size_t> layer_sizes, ActivationSpec activation,
                            std::uint64_t seed) {
    Network net(std::move(layer_sizes), activation);
    Rng rng(seed);
    for (std::size_t l = 1; l < net.layer_sizes_.size(); ++l) {
        const double fan_in = static_cast<double>(net.layer_sizes_[l - 1]);
        const double fan_out = static_cast<double>(net.layer_sizes_[l]);
        const double r = std::sqrt(6.0 / (fan_in + fan_out));
        for (double& w : net.weights_[l - 1]) w = rng.uniform(-r, r);
        // biases stay zero
    }
    return net;
}

ForwardTrace Network::forward(std::span<const double> input) const {
    if (input.size() != input_size()) {
        throw ShapeError("forward: input length " + std::to_string(input.size()) +
                         " does not match input layer size " + std::to_string(input_size()));
    }
    ForwardTrace trace;
    trace.activations.reserve(layer_sizes_.size());
    trace.pre_activations.reserve(layer_sizes_.size() - 1);
    trace.activations.emplace_back(input.begin(), input.end());

    for (std::size_t l = 1; l < layer_sizes_.size(); ++l) {
        const std::vector<double>& prev = trace.activations.back();
        const std::vector<double>& w = weights_[l - 1];
        const std::vector<double>& b = biases_[l - 1];
        const std::size_t fan_in = layer_sizes_[l - 1];
        const std::size_t fan_out = layer_sizes_[l];

        std::vector<double> z(fan_out);
        for (std::size_t i = 0; i < fan_out; ++i) {
            double sum = b[i];
            const double* row = &w[i * fan_in];
            for (std::size_t j = 0; j < fan_in; ++j) sum += row[j] * prev[j];
            z[i] = sum;
        }
        std::vector<double> a(fan_out);
        for (std::size_t i = 0; i < fan_out; ++i) a[i] = activate(activation_, z[i]);
        trace.pre_activations.push_back(std::move(z));
        trace.activations.push_back(std::move(a));
    }
    return trace;
}

std::vector<double> Network::predict(std::span<const double> input) const {
    return forward(input).activations.back();
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 1; l < layer_sizes_.size(); ++l) {
        n += layer_sizes_[l] * layer_sizes_[l - 1] + layer_sizes_[l];
    }
    return n;
}

std::vector<double> Network::parameters() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        out.insert(out.end(), weights_[l].begin(), weights_[l].end());
        out.insert(out.end(), biases_[l].begin(), biases_[l].end());
    }
    return out;
}

void Network::set_parameters(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw ShapeError("set_parameters: expected " + std::to_string(parameter_count()) +
                         " values, got " + std::to_string(params.size()));
    }
    std::size_t pos = 0;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        for (double& w : weights_[l]) w = params[pos++];
        for (double& b : biases_[l]) b = params[pos++];
    }
}

bool Network::operator==(const Network& other) const {
    return layer_sizes_ == other.layer_sizes_ && activation_ == other.activation_ &&
           weights_ == other.weights_ && biases_ == other.biases_;
}

} // namespace spamnet
