#include "spamnet/lm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

// In-place lower Cholesky of the symmetric row-major matrix a (n x n).
// Returns false when a is not numerically positive definite.
bool cholesky_factor(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            const double* ri = &a[i * n];
            const double* rj = &a[j * n];
            for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
            a[i * n + j] = s / ljj;
        }
    }
    return true;
}

// Solves L L^T x = b given the factored matrix; b is overwritten with x.
void cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double>& b) {
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        const double* row = &l[i * n];
        for (std::size_t k = 0; k < i; ++k) s -= row[k] * b[k];
        b[i] = s / row[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * b[k];
        b[ii] = s / l[ii * n + ii];
    }
}

// trace(A^-1) = squared Frobenius norm of L^-1, column by column.
double cholesky_inverse_trace(const std::vector<double>& l, std::size_t n,
                              std::vector<double>& scratch) {
    double trace = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        scratch[j] = 1.0 / l[j * n + j];
        trace += scratch[j] * scratch[j];
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = 0.0;
            const double* row = &l[i * n];
            for (std::size_t k = j; k < i; ++k) s -= row[k] * scratch[k];
            scratch[i] = s / row[i];
            trace += scratch[i] * scratch[i];
        }
    }
    return trace;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

double half_squared_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return 0.5 * s;
}

} // namespace

LmResult::LmResult()
    : final_gamma(std::numeric_limits<double>::quiet_NaN()),
      final_alpha(std::numeric_limits<double>::quiet_NaN()),
      final_beta(std::numeric_limits<double>::quiet_NaN()) {}

double lm_normal_equations(const LeastSquaresProblem& problem, std::span<const double> params,
                           std::vector<double>& jtj, std::vector<double>& jte) {
    const std::size_t n = problem.parameter_count();
    jtj.assign(n * n, 0.0);
    jte.assign(n, 0.0);
    double squared_sum = 0.0;
    problem.visit_jacobian(params, [&](std::size_t, double residual,
                                       std::span<const double> row) {
        squared_sum += residual * residual;
        for (std::size_t i = 0; i < n; ++i) {
            const double ji = row[i];
            jte[i] += ji * residual;
            double* out = &jtj[i * n];
            const double* rp = row.data();
            for (std::size_t k = i; k < n; ++k) out[k] += ji * rp[k];
        }
    });
    // Mirror the upper triangle.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) jtj[k * n + i] = jtj[i * n + k];
    }
    return squared_sum;
}

LmResult run_lm(const LeastSquaresProblem& problem, std::vector<double>& params,
                const LmOptions& options) {
    const std::size_t n = problem.parameter_count();
    const std::size_t m = problem.residual_count();
    if (params.size() != n) throw ShapeError("run_lm: parameter vector size mismatch");
    if (n > options.damping.max_parameters) {
        throw ConfigError("run_lm: " + std::to_string(n) + " parameters exceed the " +
                          std::to_string(options.damping.max_parameters) +
                          " limit for dense normal equations");
    }
    if (!(options.damping.mu0 > 0.0)) throw ConfigError("run_lm: mu0 must be > 0");

    LmResult result;
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    const bool bayesian = options.bayesian;
    double alpha = bayesian ? options.br.alpha0 : 0.0;
    double beta = bayesian ? options.br.beta0 : 1.0;
    if (bayesian) {
        result.final_alpha = alpha;
        result.final_beta = beta;
    }

    double mu = options.damping.mu0;
    double squared_sum = 0.0; // sum of squared residuals at params
    double weight_term = 0.0; // E_W = half squared parameter norm
    double objective = 0.0;   // what acceptance compares: S plain, F bayesian

    std::vector<double> jtj, jte, system(n * n), step(n), trial(n), resid(m), scratch(n);
    bool have_normal = false;
    std::size_t accepted_count = 0;

    for (std::size_t iter = 0; iter < options.stop.max_iterations; ++iter) {
        if (!have_normal) {
            squared_sum = lm_normal_equations(problem, params, jtj, jte);
            weight_term = half_squared_norm(params);
            objective = bayesian ? beta * 0.5 * squared_sum + alpha * weight_term : squared_sum;
            if (!std::isfinite(squared_sum) || !all_finite(jte) || !all_finite(jtj)) {
                result.stop = StopReason::numerical_failure;
                result.final_mu = mu;
                return result;
            }
            have_normal = true;
        }

        bool accepted = false;
        while (mu <= options.damping.mu_max) {
            // system = beta*J^T J + (alpha + mu) I, factored in place.
            system = jtj;
            if (bayesian && beta != 1.0) {
                for (double& v : system) v *= beta;
            }
            const double diag = alpha + mu;
            for (std::size_t i = 0; i < n; ++i) system[i * n + i] += diag;
            if (!cholesky_factor(system, n)) {
                mu *= options.damping.mu_increase;
                ++result.rejected_steps;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                step[i] = bayesian ? beta * jte[i] + alpha * params[i] : jte[i];
            }
            cholesky_solve(system, n, step);
            for (std::size_t i = 0; i < n; ++i) trial[i] = params[i] - step[i];
            if (!all_finite(trial)) {
                mu *= options.damping.mu_increase;
                ++result.rejected_steps;
                continue;
            }
            problem.residuals(trial, resid);
            double squared_try = 0.0;
            for (double r : resid) squared_try += r * r;
            const double weight_try = half_squared_norm(trial);
            const double objective_try =
                bayesian ? beta * 0.5 * squared_try + alpha * weight_try : squared_try;

            if (std::isfinite(objective_try) && objective_try < objective) {
                params.swap(trial);
                squared_sum = squared_try;
                weight_term = weight_try;
                objective = objective_try;
                accepted = true;
                ++accepted_count;
                if (bayesian && options.br.reestimate_every > 0 &&
                    accepted_count % options.br.reestimate_every == 0) {
                    // Effective parameter count from the damped system that
                    // produced this step.
                    const double trace = cholesky_inverse_trace(system, n, scratch);
                    double gamma = static_cast<double>(n) - alpha * trace;
                    gamma = std::clamp(gamma, 0.0, static_cast<double>(n));
                    if (weight_term > 0.0) alpha = gamma / (2.0 * weight_term);
                    const double data_term = 0.5 * squared_sum;
                    if (data_term > 0.0 && static_cast<double>(m) > gamma) {
                        beta = (static_cast<double>(m) - gamma) / (2.0 * data_term);
                    }
                    objective = beta * 0.5 * squared_sum + alpha * weight_term;
                    result.final_gamma = gamma;
                    result.final_alpha = alpha;
                    result.final_beta = beta;
                }
                mu *= options.damping.mu_decrease;
                break;
            }
            mu *= options.damping.mu_increase;
            ++result.rejected_steps;
        }

        if (!accepted) {
            result.stop = StopReason::stalled;
            result.final_mu = mu;
            return result;
        }

        have_normal = false;
        result.error_trace.push_back(options.error_scale * squared_sum);
        result.mu_trace.push_back(mu);
        if (bayesian) result.objective_trace.push_back(objective);
        result.iter_seconds.push_back(elapsed());

        if (std::isfinite(options.stop.target_error) &&
            result.error_trace.back() <= options.stop.target_error) {
            result.stop = StopReason::target_error_reached;
            result.final_mu = mu;
            return result;
        }
    }
    result.stop = StopReason::iterations_exhausted;
    result.final_mu = mu;
    return result;
}

} // namespace spamnet
