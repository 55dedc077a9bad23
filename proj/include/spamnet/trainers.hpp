#pragma once

#include <cstdint>
#include <ctime>
#include <string>
#include <vector>

#include "spamnet/network.hpp"
#include "spamnet/optim_types.hpp"
#include "spamnet/training_data.hpp"

namespace spamnet {

struct TrainerConfig {
    Algorithm algorithm = Algorithm::cg;
    std::size_t max_iterations = 100; // the paper grid's stopping criterion
    // Consumed by CG as the fallback line-search scale when the unit step
    // fails Armijo; the other algorithms size their own steps.
    double learning_rate = 0.1;
    RpropSettings rprop;
    LmSettings lm;
    BrSettings br;
    // Early stop once the global error drops to this value; non-finite
    // disables the check.
    double target_error = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    // Per-pattern reductions always run in a fixed sequential order; the
    // flag is part of the contract and reserved for a parallel reduction.
    bool deterministic = true;

    void validate() const;
};

struct TrainingReport {
    Algorithm algorithm = Algorithm::cg;
    double initial_error = 0.0;
    std::vector<double> error_trace; // global error after each iteration
    // Per-iteration algorithm statistic: CG step length, RPROP mean step
    // size, LM/LM+BR damping mu.
    std::vector<double> aux_trace;
    std::vector<double> iter_seconds; // elapsed since training start
    StopReason stop = StopReason::iterations_exhausted;
    double train_seconds = 0.0;
    std::time_t started_at = 0;

    std::size_t line_search_failures = 0; // CG
    std::size_t restarts = 0;             // CG
    std::size_t rejected_steps = 0;       // LM family
    double final_mu = 0.0;                // LM family
    // LM+BR: regularized objective per iteration and final hyperparameters.
    std::vector<double> objective_trace;
    double final_gamma = 0.0;
    double final_alpha = 0.0;
    double final_beta = 0.0;
    double final_weight_norm_sq = 0.0;

    std::size_t iterations() const { return error_trace.size(); }
    double final_error() const {
        return error_trace.empty() ? initial_error : error_trace.back();
    }
    const char* aux_name() const;
};

TrainingReport train_cg(Network& net, const TrainingSet& data, const TrainerConfig& config);
TrainingReport train_rprop(Network& net, const TrainingSet& data, const TrainerConfig& config);
TrainingReport train_lm(Network& net, const TrainingSet& data, const TrainerConfig& config);
TrainingReport train_lm_br(Network& net, const TrainingSet& data, const TrainerConfig& config);

// Dispatches on config.algorithm.
TrainingReport train(Network& net, const TrainingSet& data, const TrainerConfig& config);

// Line-oriented log: one `<iter> <error> <aux>=<value> <timestamp>` row per
// iteration, preceded by `#` header lines.
std::string report_to_log(const TrainingReport& report);

// Machine-readable one-object JSON summary.
std::string report_to_json(const TrainingReport& report);

} // namespace spamnet
