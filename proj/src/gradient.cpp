#include "spamnet/gradient.hpp"

#include <cmath>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

// Backpropagates a seeded output-layer delta through the trace and adds the
// resulting per-parameter derivatives into `out`, which uses the flat
// Network parameter layout. `delta` already includes f'(z) at the output.
void accumulate_from_output_delta(const Network& net, const ForwardTrace& trace,
                                  std::vector<double>& delta, std::span<double> out) {
    const auto& sizes = net.layer_sizes();
    const std::size_t n_layers = sizes.size();

    // Flat offset of each weighted layer's block.
    std::size_t offset = 0;
    std::vector<std::size_t> block_start(n_layers);
    for (std::size_t l = 1; l < n_layers; ++l) {
        block_start[l] = offset;
        offset += sizes[l] * sizes[l - 1] + sizes[l];
    }

    std::vector<double> next_delta;
    for (std::size_t l = n_layers - 1; l >= 1; --l) {
        const std::size_t fan_in = sizes[l - 1];
        const std::size_t fan_out = sizes[l];
        const std::vector<double>& below = trace.activations[l - 1];
        double* wgrad = out.data() + block_start[l];
        double* bgrad = wgrad + fan_out * fan_in;

        for (std::size_t i = 0; i < fan_out; ++i) {
            const double d = delta[i];
            double* row = wgrad + i * fan_in;
            for (std::size_t j = 0; j < fan_in; ++j) row[j] += d * below[j];
            bgrad[i] += d;
        }

        if (l == 1) break;
        const std::vector<double>& w = net.weights(l);
        const std::vector<double>& z_below = trace.pre_activations[l - 2];
        next_delta.assign(fan_in, 0.0);
        for (std::size_t i = 0; i < fan_out; ++i) {
            const double d = delta[i];
            const double* row = &w[i * fan_in];
            for (std::size_t j = 0; j < fan_in; ++j) next_delta[j] += row[j] * d;
        }
        for (std::size_t j = 0; j < fan_in; ++j) {
            next_delta[j] *= activate_derivative(net.activation(), z_below[j]);
        }
        delta.swap(next_delta);
    }
}

} // namespace

double global_error(const Network& net, const TrainingSet& data) {
    data.validate(net);
    double total = 0.0;
    for (const Pattern& pat : data.patterns) {
        const std::vector<double> out = net.predict(pat.input);
        double e = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double d = out[i] - pat.target[i];
            e += d * d;
        }
        total += 0.5 * e;
    }
    return total / static_cast<double>(data.size());
}

double global_error_and_gradient(const Network& net, const TrainingSet& data,
                                 std::span<double> grad) {
    data.validate(net);
    if (grad.size() != net.parameter_count()) {
        throw ShapeError("gradient buffer size does not match parameter count");
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    const double inv_p = 1.0 / static_cast<double>(data.size());
    const ActivationSpec& act = net.activation();

    double total = 0.0;
    std::vector<double> delta;
    for (const Pattern& pat : data.patterns) {
        const ForwardTrace trace = net.forward(pat.input);
        const std::vector<double>& out = trace.output();
        const std::vector<double>& z_out = trace.pre_activations.back();

        delta.resize(out.size());
        double e = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double r = out[i] - pat.target[i];
            e += r * r;
            // inv_p folded into the seed; backprop is linear in delta.
            delta[i] = inv_p * r * activate_derivative(act, z_out[i]);
        }
        total += 0.5 * e;
        accumulate_from_output_delta(net, trace, delta, grad);
    }
    return total * inv_p;
}

std::vector<double> backprop_gradient(const Network& net, const TrainingSet& data) {
    std::vector<double> grad(net.parameter_count());
    global_error_and_gradient(net, data, grad);
    return grad;
}

NetworkObjective::NetworkObjective(const Network& net, const TrainingSet& data)
    : scratch_(net), data_(data) {
    data_.validate(scratch_);
}

std::size_t NetworkObjective::parameter_count() const { return scratch_.parameter_count(); }

double NetworkObjective::value(std::span<const double> params) const {
    scratch_.set_parameters(params);
    return global_error(scratch_, data_);
}

double NetworkObjective::value_and_gradient(std::span<const double> params,
                                            std::span<double> grad) const {
    scratch_.set_parameters(params);
    return global_error_and_gradient(scratch_, data_, grad);
}

NetworkResiduals::NetworkResiduals(const Network& net, const TrainingSet& data)
    : scratch_(net), data_(data) {
    data_.validate(scratch_);
}

std::size_t NetworkResiduals::parameter_count() const { return scratch_.parameter_count(); }

std::size_t NetworkResiduals::residual_count() const {
    return data_.size() * scratch_.output_size();
}

void NetworkResiduals::residuals(std::span<const double> params, std::span<double> out) const {
    if (out.size() != residual_count()) throw ShapeError("residual buffer size mismatch");
    scratch_.set_parameters(params);
    std::size_t row = 0;
    for (const Pattern& pat : data_.patterns) {
        const std::vector<double> o = scratch_.predict(pat.input);
        for (std::size_t i = 0; i < o.size(); ++i) out[row++] = o[i] - pat.target[i];
    }
}

void NetworkResiduals::visit_jacobian(
    std::span<const double> params,
    const std::function<void(std::size_t, double, std::span<const double>)>& visit) const {
    scratch_.set_parameters(params);
    const std::size_t n_params = scratch_.parameter_count();
    const std::size_t n_out = scratch_.output_size();
    const ActivationSpec& act = scratch_.activation();

    std::vector<double> row(n_params);
    std::vector<double> delta;
    std::size_t index = 0;
    for (const Pattern& pat : data_.patterns) {
        const ForwardTrace trace = scratch_.forward(pat.input);
        const std::vector<double>& out = trace.output();
        const std::vector<double>& z_out = trace.pre_activations.back();
        for (std::size_t i = 0; i < n_out; ++i) {
            std::fill(row.begin(), row.end(), 0.0);
            delta.assign(n_out, 0.0);
            delta[i] = activate_derivative(act, z_out[i]);
            accumulate_from_output_delta(scratch_, trace, delta, row);
            visit(index++, out[i] - pat.target[i], row);
        }
    }
}

} // namespace spamnet
