#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "spamnet/gradient.hpp"
#include "spamnet/network.hpp"
#include "spamnet/rng.hpp"
#include "spamnet/training_data.hpp"

namespace spamnet::test {

// Central finite difference of global_error w.r.t. every parameter; the
// independent oracle the analytic gradient is checked against.
inline std::vector<double> finite_difference_gradient(const Network& net, const TrainingSet& data,
                                                      double step = 1e-6) {
    Network scratch = net;
    std::vector<double> params = net.parameters();
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + step;
        scratch.set_parameters(params);
        const double up = global_error(scratch, data);
        params[i] = saved - step;
        scratch.set_parameters(params);
        const double down = global_error(scratch, data);
        params[i] = saved;
        grad[i] = (up - down) / (2.0 * step);
    }
    scratch.set_parameters(params);
    return grad;
}

inline Network random_network(const std::vector<std::size_t>& sizes, ActivationSpec activation,
                              std::uint64_t seed) {
    return Network::initialize(sizes, activation, seed);
}

inline TrainingSet random_training_set(std::size_t patterns, std::size_t inputs,
                                       std::size_t outputs, const ActivationSpec& activation,
                                       std::uint64_t seed) {
    Rng rng(seed);
    TrainingSet set;
    const double lo = activation.range_min() * 0.9;
    const double hi = activation.range_max() * 0.9;
    for (std::size_t p = 0; p < patterns; ++p) {
        Pattern pat;
        for (std::size_t i = 0; i < inputs; ++i) pat.input.push_back(rng.uniform(-2.0, 2.0));
        for (std::size_t i = 0; i < outputs; ++i) pat.target.push_back(rng.uniform(lo, hi));
        set.patterns.push_back(std::move(pat));
    }
    return set;
}

// Unique scratch path under the build tree's temp dir.
inline std::string temp_path(const std::string& name) {
    static std::uint64_t counter = 0;
    const auto dir = std::filesystem::temp_directory_path() / "spamnet-tests";
    std::filesystem::create_directories(dir);
    return (dir / (std::to_string(++counter) + "-" + name)).string();
}

// The 4-pattern XOR task in the bipolar convention.
inline TrainingSet xor_patterns() {
    TrainingSet set;
    set.patterns = {
        {{-1.0, -1.0}, {-1.0}},
        {{-1.0, 1.0}, {1.0}},
        {{1.0, -1.0}, {1.0}},
        {{1.0, 1.0}, {-1.0}},
    };
    return set;
}

} // namespace spamnet::test
