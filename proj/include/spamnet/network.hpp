#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spamnet/activation.hpp"

namespace spamnet {

// Everything computed by one forward pass: activations[0] is the input,
// activations[l] (l >= 1) the outputs of layer l, pre_activations[l-1] the
// weighted sums feeding layer l. Kept around for backpropagation.
struct ForwardTrace {
    std::vector<std::vector<double>> activations;
    std::vector<std::vector<double>> pre_activations;

    const std::vector<double>& output() const { return activations.back(); }
};

// Fully connected feed-forward network. Layer l (l >= 1) owns a row-major
// (layer_sizes[l] x layer_sizes[l-1]) weight matrix and a bias per neuron.
// The same activation applies to every hidden and output neuron.
//
// The object is immutable during forward passes and safe to share
// read-only across threads; training mutates it and needs exclusive access.
class Network {
public:
    Network(std::vector<std::size_t> layer_sizes, ActivationSpec activation);

    // Weights uniform in +/- sqrt(6 / (fan_in + fan_out)), biases zero.
    // Deterministic for a fixed seed.
    static Network initialize(std::vector<std::size_t> layer_sizes, ActivationSpec activation,
                              std::uint64_t seed);

    const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }
    const ActivationSpec& activation() const { return activation_; }
    std::size_t input_size() const { return layer_sizes_.front(); }
    std::size_t output_size() const { return layer_sizes_.back(); }
    std::size_t layer_count() const { return layer_sizes_.size(); }

    // Row-major weight matrix of layer l (1-based over non-input layers).
    std::vector<double>& weights(std::size_t layer) { return weights_[layer - 1]; }
    const std::vector<double>& weights(std::size_t layer) const { return weights_[layer - 1]; }
    std::vector<double>& biases(std::size_t layer) { return biases_[layer - 1]; }
    const std::vector<double>& biases(std::size_t layer) const { return biases_[layer - 1]; }

    ForwardTrace forward(std::span<const double> input) const;
    std::vector<double> predict(std::span<const double> input) const;

    // Flat parameter vector: per non-input layer, the row-major weight
    // matrix followed by the bias vector. Order is part of the model
    // format and must not change.
    std::size_t parameter_count() const;
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);

    bool operator==(const Network& other) const;

private:
    std::vector<std::size_t> layer_sizes_;
    std::vector<std::vector<double>> weights_; // [l-1]: layer_sizes[l] x layer_sizes[l-1]
    std::vector<std::vector<double>> biases_;  // [l-1]: layer_sizes[l]
    ActivationSpec activation_;
};

} // namespace spamnet
