#pragma once

#include <span>
#include <vector>

#include "spamnet/objective.hpp"
#include "spamnet/optim_types.hpp"

namespace spamnet {

// Per-parameter adaptive step rule (iRPROP- variant). Consumes nothing but
// gradient signs: same sign on two successive iterations grows the step by
// eta_plus (capped), a sign flip shrinks it by eta_minus (floored) and
// skips that parameter's update for the iteration, a zero derivative
// leaves both step and weight unchanged. The update applied is
// -sign(g) * step.
//
// Exposed standalone so the sign-only contract can be exercised against
// frozen gradient streams.
class RpropRule {
public:
    RpropRule(std::size_t parameter_count, RpropSettings settings);

    void apply(std::span<double> params, std::span<const double> grad);

    const std::vector<double>& steps() const { return step_; }
    double mean_step() const;

private:
    RpropSettings settings_;
    std::vector<double> step_;
    std::vector<signed char> prev_sign_;
};

struct RpropResult {
    std::vector<double> error_trace;
    std::vector<double> mean_step_trace;
    std::vector<double> iter_seconds;
    StopReason stop = StopReason::iterations_exhausted;
};

struct RpropOptions {
    StopSettings stop;
    RpropSettings rule;
};

RpropResult run_rprop(const GradientObjective& objective, std::vector<double>& params,
                      const RpropOptions& options);

} // namespace spamnet
