#pragma once

#include <span>
#include <vector>

#include "spamnet/network.hpp"
#include "spamnet/objective.hpp"
#include "spamnet/training_data.hpp"

namespace spamnet {

// Mean over patterns of half the squared output error:
// E = (1/P) * sum_p (1/2) * sum_i (O_i - t_i)^2.
double global_error(const Network& net, const TrainingSet& data);

// dE/dw for every parameter, flattened in Network parameter order.
// Full-batch, accumulated pattern by pattern in a fixed order.
std::vector<double> backprop_gradient(const Network& net, const TrainingSet& data);

// One combined pass; returns E and fills grad.
double global_error_and_gradient(const Network& net, const TrainingSet& data,
                                 std::span<double> grad);

// GradientObjective over (topology, data); params are network parameters.
class NetworkObjective : public GradientObjective {
public:
    NetworkObjective(const Network& net, const TrainingSet& data);

    std::size_t parameter_count() const override;
    double value(std::span<const double> params) const override;
    double value_and_gradient(std::span<const double> params,
                              std::span<double> grad) const override;

private:
    mutable Network scratch_;
    const TrainingSet& data_;
};

// Residual view for Levenberg-Marquardt: one residual per (pattern,
// output), value O_i - t_i, un-averaged. Jacobian rows come from one
// backward pass per residual. With E the averaged objective above,
// J^T e equals P * backprop_gradient.
class NetworkResiduals : public LeastSquaresProblem {
public:
    NetworkResiduals(const Network& net, const TrainingSet& data);

    std::size_t parameter_count() const override;
    std::size_t residual_count() const override;
    void residuals(std::span<const double> params, std::span<double> out) const override;
    void visit_jacobian(std::span<const double> params,
                        const std::function<void(std::size_t, double, std::span<const double>)>&
                            visit) const override;

private:
    mutable Network scratch_;
    const TrainingSet& data_;
};

} // namespace spamnet
