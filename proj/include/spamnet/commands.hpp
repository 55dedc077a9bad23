#pragma once

#include <iosfwd>
#include <limits>
#include <string>

#include "spamnet/experiment.hpp"
#include "spamnet/metrics.hpp"
#include "spamnet/optim_types.hpp"

namespace spamnet {

// The CLI subcommands as callable operations; the binary in tools/ only
// parses flags. All of them throw spamnet errors on fatal problems.

struct ExtractOptions {
    std::string pages_dir; // <id>.url / <id>.html pairs, label via
                           // <id>.label or a spam|ham parent directory
    std::string out_csv;
    GroupMask groups = kAllGroups;
    std::string data_dir; // empty = default lexicon location
};

// Returns the number of extracted records; per-record failures go to
// `diag` and do not abort the batch. Throws when nothing was extractable.
std::size_t cmd_extract(const ExtractOptions& options, std::ostream& diag);

struct TrainOptions {
    std::string corpus_csv;
    std::string model_out;
    std::string log_out; // empty = <model_out>.log
    Algorithm algorithm = Algorithm::cg;
    std::size_t hidden = 10;
    std::size_t iterations = 100;
    double learning_rate = 0.1;
    double target_error = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    GroupMask groups = 0; // 0 = whatever the corpus holds
};

// Normalizes on the supplied corpus, trains [features, hidden, 1] and
// writes the model plus a training log; returns the final global error.
double cmd_train(const TrainOptions& options, std::ostream& diag);

struct EvaluateOptions {
    std::string model_path;
    std::string corpus_csv;
};

// Applies the model's stored normalization, thresholds at 0 and prints the
// four metrics to 4 decimals. Throws SchemaError when the corpus feature
// schema differs from the model's.
MetricsReport cmd_evaluate(const EvaluateOptions& options, std::ostream& out);

struct ExperimentOptions {
    std::string corpus_csv;
    std::string plan_json_path; // optional config file
    std::string out_dir;        // tables written as results_<subset>.{md,csv}
    // Overrides applied after the config file; zero/empty = keep.
    std::size_t readings = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t workers = 0;
};

// Runs the grid, writes one Markdown and one CSV table per subset and a
// combined results.md; returns false when any cell failed.
bool cmd_experiment(const ExperimentOptions& options, std::ostream& out);

struct SynthOptions {
    std::string out_csv;
    std::size_t rows = 368;
    double spam_fraction = 0.3;
    double separation = 3.0;
    std::uint64_t seed = 0;
};

void cmd_synth(const SynthOptions& options, std::ostream& out);

} // namespace spamnet
