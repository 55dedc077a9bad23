#include "spamnet/rprop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

signed char sign_of(double v) {
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

} // namespace

RpropRule::RpropRule(std::size_t parameter_count, RpropSettings settings)
    : settings_(settings),
      step_(parameter_count, settings.delta0),
      prev_sign_(parameter_count, 0) {
    if (!(settings_.eta_minus > 0.0 && settings_.eta_minus < 1.0)) {
        throw ConfigError("rprop: eta_minus must be in (0,1)");
    }
    if (!(settings_.eta_plus > 1.0)) throw ConfigError("rprop: eta_plus must be > 1");
    if (!(settings_.delta_min < settings_.delta0 && settings_.delta0 < settings_.delta_max)) {
        throw ConfigError("rprop: need delta_min < delta0 < delta_max");
    }
}

void RpropRule::apply(std::span<double> params, std::span<const double> grad) {
    if (params.size() != step_.size() || grad.size() != step_.size()) {
        throw ShapeError("rprop: vector size mismatch");
    }
    for (std::size_t i = 0; i < step_.size(); ++i) {
        const signed char s = sign_of(grad[i]);
        const int product = static_cast<int>(prev_sign_[i]) * static_cast<int>(s);
        if (product > 0) {
            step_[i] = std::min(step_[i] * settings_.eta_plus, settings_.delta_max);
            params[i] -= static_cast<double>(s) * step_[i];
            prev_sign_[i] = s;
        } else if (product < 0) {
            // Sign flip: shrink the step and sit this iteration out.
            step_[i] = std::max(step_[i] * settings_.eta_minus, settings_.delta_min);
            prev_sign_[i] = 0;
        } else {
            params[i] -= static_cast<double>(s) * step_[i];
            prev_sign_[i] = s;
        }
    }
}

double RpropRule::mean_step() const {
    if (step_.empty()) return 0.0;
    double sum = 0.0;
    for (double d : step_) sum += d;
    return sum / static_cast<double>(step_.size());
}

RpropResult run_rprop(const GradientObjective& objective, std::vector<double>& params,
                      const RpropOptions& options) {
    const std::size_t n = objective.parameter_count();
    if (params.size() != n) throw ShapeError("run_rprop: parameter vector size mismatch");

    RpropResult result;
    RpropRule rule(n, options.rule);
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    std::vector<double> grad(n);
    for (std::size_t iter = 0; iter < options.stop.max_iterations; ++iter) {
        const double fx = objective.value_and_gradient(params, grad);
        bool finite = std::isfinite(fx);
        for (std::size_t i = 0; finite && i < n; ++i) finite = std::isfinite(grad[i]);
        if (!finite) {
            result.stop = StopReason::numerical_failure;
            return result;
        }

        rule.apply(params, grad);
        const double f_new = objective.value(params);
        result.error_trace.push_back(f_new);
        result.mean_step_trace.push_back(rule.mean_step());
        result.iter_seconds.push_back(elapsed());

        if (std::isfinite(options.stop.target_error) && f_new <= options.stop.target_error) {
            result.stop = StopReason::target_error_reached;
            return result;
        }
    }
    result.stop = StopReason::iterations_exhausted;
    return result;
}

} // namespace spamnet
