#include "spamnet/activation.hpp"

#include <cmath>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

double clamp_interior(double v, double lo, double hi) {
    if (v <= lo) return std::nextafter(lo, hi);
    if (v >= hi) return std::nextafter(hi, lo);
    return v;
}

double logistic_value(double x) {
    // Evaluate without overflowing exp for large |x|.
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

} // namespace

double activate(const ActivationSpec& spec, double x) {
    switch (spec.kind) {
    case ActivationKind::logistic:
        return clamp_interior(logistic_value(x), 0.0, 1.0);
    case ActivationKind::bipolar_sigmoid:
        // 2/(1+e^-ax) - 1 == tanh(ax/2)
        return clamp_interior(std::tanh(0.5 * spec.steepness * x), -1.0, 1.0);
    }
    throw Error("unknown activation kind");
}

double activate_derivative(const ActivationSpec& spec, double x) {
    switch (spec.kind) {
    case ActivationKind::logistic: {
        const double f = logistic_value(x);
        return f * (1.0 - f);
    }
    case ActivationKind::bipolar_sigmoid: {
        const double f = std::tanh(0.5 * spec.steepness * x);
        return 0.5 * spec.steepness * (1.0 - f * f);
    }
    }
    throw Error("unknown activation kind");
}

std::string to_string(ActivationKind kind) {
    return kind == ActivationKind::logistic ? "logistic" : "bipolar-sigmoid";
}

ActivationKind activation_kind_from_string(const std::string& name) {
    if (name == "logistic") return ActivationKind::logistic;
    if (name == "bipolar-sigmoid") return ActivationKind::bipolar_sigmoid;
    throw Error("unknown activation kind: " + name);
}

} // namespace spamnet
