#include "spamnet/cg.hpp"

#include <chrono>
#include <cmath>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

} // namespace

double fletcher_reeves_beta(std::span<const double> grad, std::span<const double> prev_grad) {
    const double denom = dot(prev_grad, prev_grad);
    if (denom == 0.0) return 0.0;
    return dot(grad, grad) / denom;
}

CgResult run_cg(const GradientObjective& objective, std::vector<double>& params,
                const CgOptions& options) {
    const std::size_t n = objective.parameter_count();
    if (params.size() != n) throw ShapeError("run_cg: parameter vector size mismatch");

    CgResult result;
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    std::vector<double> grad(n), direction(n), trial(n);
    double fx = objective.value_and_gradient(params, grad);
    double prev_grad_sq = 0.0;
    bool have_prev = false;
    std::size_t since_restart = 0;
    bool force_restart = false;

    for (std::size_t iter = 0; iter < options.stop.max_iterations; ++iter) {
        if (!std::isfinite(fx) || !all_finite(grad)) {
            result.stop = StopReason::numerical_failure;
            return result;
        }

        const double grad_sq = dot(grad, grad);
        bool restarted = false;
        if (!have_prev || force_restart || since_restart >= n || prev_grad_sq == 0.0) {
            for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
            restarted = true;
        } else {
            const double beta = grad_sq / prev_grad_sq;
            for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i] + beta * direction[i];
        }
        double slope = dot(grad, direction);
        if (!restarted && slope >= 0.0) {
            // Non-descent direction; fall back to steepest descent.
            for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
            slope = -grad_sq;
            restarted = true;
        }
        if (restarted) {
            ++result.restarts;
            since_restart = 0;
            force_restart = false;
        }

        // Armijo backtracking: step 1.0, then the fallback scale halved.
        double accepted_step = 0.0;
        double f_accepted = fx;
        double step = 1.0;
        auto try_step = [&](double t) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = params[i] + t * direction[i];
            return objective.value(trial);
        };
        for (int attempt = 0; attempt <= options.max_backtracks; ++attempt) {
            if (attempt == 1) {
                step = options.fallback_step_scale;
            } else if (attempt > 1) {
                step *= 0.5;
            }
            const double f_try = try_step(step);
            if (std::isfinite(f_try) && f_try <= fx + options.armijo_c * step * slope) {
                accepted_step = step;
                f_accepted = f_try;
                break;
            }
        }

        if (accepted_step > 0.0 && slope < 0.0) {
            // One quadratic-interpolation refinement: fit a parabola to
            // (f(x), slope, f(x + t p)) and take its minimizer. Exact for
            // quadratic objectives, where plain backtracked steps crawl.
            const double t = accepted_step;
            const double denom = 2.0 * (f_accepted - fx - t * slope);
            if (denom > 0.0) {
                const double refined = -slope * t * t / denom;
                if (std::isfinite(refined) && refined > 0.0 && refined <= 1e3) {
                    const double f_refined = try_step(refined);
                    if (std::isfinite(f_refined) && f_refined < f_accepted &&
                        f_refined <= fx + options.armijo_c * refined * slope) {
                        accepted_step = refined;
                        f_accepted = f_refined;
                    }
                }
            }
        }

        if (accepted_step > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = params[i] + accepted_step * direction[i];
            }
            params.swap(trial);
            prev_grad_sq = grad_sq;
            fx = objective.value_and_gradient(params, grad);
            have_prev = true;
            ++since_restart;
        } else {
            // Zero step this iteration; retry from steepest descent.
            ++result.line_search_failures;
            force_restart = true;
            fx = f_accepted;
        }

        result.error_trace.push_back(fx);
        result.step_trace.push_back(accepted_step);
        result.iter_seconds.push_back(elapsed());

        if (std::isfinite(options.stop.target_error) && fx <= options.stop.target_error) {
            result.stop = StopReason::target_error_reached;
            return result;
        }
    }
    result.stop = StopReason::iterations_exhausted;
    return result;
}

} // namespace spamnet
