#pragma once

#include <span>
#include <vector>

#include "spamnet/objective.hpp"
#include "spamnet/optim_types.hpp"

namespace spamnet {

// Nonlinear conjugate gradient, Fletcher-Reeves flavor: first direction is
// steepest descent, later ones mix in the previous direction weighted by
// the gradient-norm ratio. Steps come from a backtracking Armijo search,
// so the recorded error never increases across an iteration.
struct CgOptions {
    StopSettings stop;
    double armijo_c = 1e-4;
    // Candidate steps: 1.0 first, then fallback_step_scale halved
    // repeatedly, at most max_backtracks candidates after the first.
    double fallback_step_scale = 0.1;
    int max_backtracks = 30;
};

struct CgResult {
    std::vector<double> error_trace; // objective after each iteration
    std::vector<double> step_trace;  // accepted step length (0 on failure)
    std::vector<double> iter_seconds;
    StopReason stop = StopReason::iterations_exhausted;
    std::size_t line_search_failures = 0;
    std::size_t restarts = 0;
};

// Ratio of squared gradient norms; the direction mixing weight.
double fletcher_reeves_beta(std::span<const double> grad, std::span<const double> prev_grad);

CgResult run_cg(const GradientObjective& objective, std::vector<double>& params,
                const CgOptions& options);

} // namespace spamnet
