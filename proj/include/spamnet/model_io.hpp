#pragma once

#include <string>
#include <vector>

#include "spamnet/network.hpp"

namespace spamnet {

// On-disk model: the network plus everything needed to reproduce
// training-time preprocessing at inference. Text format, one field per
// line, FNV-1a checksum on the last line; see save_model for the layout.
struct ModelFile {
    static constexpr int schema_version = 1;

    Network network;
    std::vector<std::string> feature_groups; // subset the model was trained on
    std::vector<std::string> feature_names;  // one per network input
    std::string normalization_scheme;        // "minmax" maps [min,max] -> [-1,1]
    std::vector<double> feature_min;
    std::vector<double> feature_max;

    explicit ModelFile(Network net) : network(std::move(net)) {}
};

// Layout, in order: magic+version, layers, activation, groups, normalization
// scheme, one `feature <name> <min> <max>` line per input, `params <count>`
// followed by one value per line (printf %.17g, bit-exact round trip),
// `checksum <fnv1a64 hex>` over every preceding byte.
void save_model(const ModelFile& model, const std::string& path);

// Throws ModelIoError with a distinct code for I/O trouble, malformed
// content, an unknown schema version, or a checksum mismatch.
ModelFile load_model(const std::string& path);

} // namespace spamnet
