#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace spamnet {

// Scalar function of a parameter vector with an analytic gradient. The
// first-order trainers (conjugate gradient, resilient backprop) run
// against this, which keeps them testable on closed-form problems.
class GradientObjective {
public:
    virtual ~GradientObjective() = default;

    virtual std::size_t parameter_count() const = 0;
    virtual double value(std::span<const double> params) const = 0;
    // Returns the value and fills grad (size parameter_count()).
    virtual double value_and_gradient(std::span<const double> params,
                                      std::span<double> grad) const = 0;
};

// Residual-vector view of a problem for Gauss-Newton style training:
// minimize sum of squared residuals. Rows are visited in a fixed order so
// normal-equation assembly is deterministic.
class LeastSquaresProblem {
public:
    virtual ~LeastSquaresProblem() = default;

    virtual std::size_t parameter_count() const = 0;
    virtual std::size_t residual_count() const = 0;

    // Fills out (size residual_count()) with the residuals at params.
    virtual void residuals(std::span<const double> params, std::span<double> out) const = 0;

    // Visits every residual with its Jacobian row (derivatives of that
    // residual w.r.t. all parameters), in residual order.
    virtual void visit_jacobian(
        std::span<const double> params,
        const std::function<void(std::size_t row, double residual,
                                 std::span<const double> jacobian_row)>& visit) const = 0;
};

} // namespace spamnet
