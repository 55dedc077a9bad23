#pragma once

#include <cstddef>
#include <vector>

#include "spamnet/network.hpp"

namespace spamnet {

// One supervised example. Under the bipolar output convention the spam
// class targets +1 and ham targets -1.
struct Pattern {
    std::vector<double> input;
    std::vector<double> target;
};

struct TrainingSet {
    std::vector<Pattern> patterns;

    std::size_t size() const { return patterns.size(); }
    bool empty() const { return patterns.empty(); }

    // Checks pattern dimensions against the network, finiteness, and that
    // targets lie within the closed output range of the activation.
    void validate(const Network& net) const;
};

} // namespace spamnet
