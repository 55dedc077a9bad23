#pragma once

#include <string>

namespace spamnet {

enum class ActivationKind { logistic, bipolar_sigmoid };

// Sigmoid family used by the hidden and output layers.
//
// logistic:        f(x) = 1 / (1 + e^-x),        range (0, 1)
// bipolar_sigmoid: f(x) = 2 / (1 + e^-a*x) - 1,  range (-1, 1)
//
// `steepness` is the `a` of the bipolar form; the logistic form has a fixed
// shape and ignores it. The default a = 2 makes the bipolar derivative at 0
// equal to 1.
struct ActivationSpec {
    ActivationKind kind = ActivationKind::bipolar_sigmoid;
    double steepness = 2.0;

    static ActivationSpec logistic() { return {ActivationKind::logistic, 1.0}; }
    static ActivationSpec bipolar(double steepness = 2.0) {
        return {ActivationKind::bipolar_sigmoid, steepness};
    }

    bool operator==(const ActivationSpec&) const = default;

    // Closed interval the outputs live in; targets must stay inside it.
    double range_min() const { return kind == ActivationKind::logistic ? 0.0 : -1.0; }
    double range_max() const { return 1.0; }
};

// f(x). Saturates to the nearest representable value strictly inside the
// open output range, so downstream range invariants hold even at |x| large
// enough that the exact value would round to an endpoint.
double activate(const ActivationSpec& spec, double x);

// df/dx in closed form: logistic f(1-f); bipolar (a/2)(1 - f^2).
double activate_derivative(const ActivationSpec& spec, double x);

std::string to_string(ActivationKind kind);
ActivationKind activation_kind_from_string(const std::string& name);

} // namespace spamnet
