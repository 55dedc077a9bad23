#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spamnet/dataset.hpp"
#include "spamnet/optim_types.hpp"

namespace spamnet {

// The experimental grid: feature subsets x algorithms x hidden sizes,
// each cell averaged over independent readings. Defaults reproduce the
// seven-subset protocol with the wide subsets also run at 20 hidden
// neurons.
struct ExperimentPlan {
    std::vector<GroupMask> subsets = {
        kGroupUrl,
        kGroupContent,
        kGroupLinks,
        kGroupUrl | kGroupLinks,
        kGroupUrl | kGroupContent,
        kGroupContent | kGroupLinks,
        kAllGroups,
    };
    std::vector<Algorithm> algorithms = {Algorithm::cg, Algorithm::rprop, Algorithm::lm,
                                         Algorithm::lm_br};
    std::size_t hidden_small = 10;
    std::size_t hidden_large = 20;
    // Subsets with at least this many features also run at hidden_large.
    std::size_t large_hidden_min_features = 26;

    std::size_t readings = 10;
    std::uint64_t seed = 0;
    double train_fraction = 0.8;
    // Each reading re-splits the corpus and re-initializes weights; when
    // false only the initialization varies.
    bool resplit_each_reading = true;

    std::size_t max_iterations = 100;
    double learning_rate = 0.1;

    // 0 = SPAMNET_WORKERS env var, else hardware concurrency.
    std::size_t workers = 0;

    void validate() const;
};

// Parses a JSON plan; every field optional, unknown keys rejected.
ExperimentPlan plan_from_json(const std::string& json_text);

struct CellResult {
    GroupMask groups = 0;
    Algorithm algorithm = Algorithm::cg;
    std::size_t hidden = 0;
    std::size_t readings = 0;

    // Means over readings (metrics derived per reading, then averaged).
    double sensitivity = 0.0;
    double specificity = 0.0;
    double efficiency = 0.0;
    double accuracy = 0.0;
    double train_seconds = 0.0;

    bool failed = false;
    std::string error;
};

struct ResultTable {
    GroupMask groups = 0;
    std::vector<CellResult> rows; // grouped by hidden size, algorithm order

    std::string title() const;      // e.g. "URL + Links features (15 features)"
    std::string to_markdown() const; // best metric per column bolded, best time = min
    std::string to_csv() const;
};

// Runs every cell of the plan; cell failures are recorded, not thrown.
// Deterministic given (plan, corpus) apart from the timing columns.
std::vector<ResultTable> run_experiment(const ExperimentPlan& plan, const Corpus& corpus);

} // namespace spamnet
