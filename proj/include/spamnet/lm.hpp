#pragma once

#include <span>
#include <vector>

#include "spamnet/objective.hpp"
#include "spamnet/optim_types.hpp"

namespace spamnet {

// Levenberg-Marquardt on a residual problem: each iteration solves
// (J^T J + mu*I) dx = J^T e and tries x - dx, shrinking mu on acceptance
// and growing it on rejection, so only error-reducing steps are kept.
//
// With `bayesian` set the objective becomes F = beta*E_D + alpha*E_W
// (E_D = half the squared residual sum, E_W = half the squared weight
// norm), the solve picks up the alpha terms, and after accepted steps the
// hyperparameters are re-estimated evidence-style from the effective
// parameter count gamma.
struct LmOptions {
    StopSettings stop;
    LmSettings damping;
    bool bayesian = false;
    BrSettings br;
    // Recorded error = error_scale * (sum of squared residuals). Network
    // trainers pass 1/(2P) so traces are in global-error units.
    double error_scale = 1.0;
};

struct LmResult {
    std::vector<double> error_trace;
    std::vector<double> mu_trace;
    std::vector<double> objective_trace; // bayesian only: F per iteration
    std::vector<double> iter_seconds;
    StopReason stop = StopReason::iterations_exhausted;
    double final_mu = 0.0;
    std::size_t rejected_steps = 0;
    // Bayesian extras; NaN when not running bayesian.
    double final_gamma;
    double final_alpha;
    double final_beta;

    LmResult();
};

// Assembles J^T J (n x n, row-major) and J^T e at params in one pass over
// the Jacobian rows; returns the sum of squared residuals.
double lm_normal_equations(const LeastSquaresProblem& problem, std::span<const double> params,
                           std::vector<double>& jtj, std::vector<double>& jte);

LmResult run_lm(const LeastSquaresProblem& problem, std::vector<double>& params,
                const LmOptions& options);

} // namespace spamnet
