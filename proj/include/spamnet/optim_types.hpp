#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace spamnet {

enum class Algorithm { cg, rprop, lm, lm_br };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

enum class StopReason { iterations_exhausted, target_error_reached, numerical_failure, stalled };

std::string to_string(StopReason r);

struct RpropSettings {
    double delta0 = 0.1;
    double delta_min = 1e-6;
    double delta_max = 50.0;
    double eta_plus = 1.2;
    double eta_minus = 0.5;
};

struct LmSettings {
    double mu0 = 1e-3;
    double mu_increase = 10.0;
    double mu_decrease = 0.1;
    double mu_max = 1e10;
    // (n_params)^2 normal-equation matrix must fit in memory.
    std::size_t max_parameters = 20000;
};

struct BrSettings {
    double alpha0 = 0.0;
    double beta0 = 1.0;
    // Re-estimate (alpha, beta, gamma) after every this-many accepted
    // steps; 0 keeps them fixed at (alpha0, beta0).
    std::size_t reestimate_every = 1;
};

// Shared across the direct optimizers: iteration budget and early stop.
// A non-finite target disables early stopping.
struct StopSettings {
    std::size_t max_iterations = 100;
    double target_error = std::numeric_limits<double>::infinity();
};

} // namespace spamnet
