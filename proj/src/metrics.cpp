#include "spamnet/metrics.hpp"

#include <cstdio>

#include "spamnet/errors.hpp"

namespace spamnet {

Label label_from_string(const std::string& token) {
    if (token == "spam") return Label::spam;
    if (token == "ham") return Label::ham;
    throw Error("unknown label token: '" + token + "'");
}

ConfusionMatrix tally(std::span<const Label> predictions, std::span<const Label> truths) {
    if (predictions.size() != truths.size()) {
        throw MetricError("tally: prediction and truth lengths differ");
    }
    if (predictions.empty()) throw MetricError("tally: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool predicted_spam = predictions[i] == Label::spam;
        const bool is_spam = truths[i] == Label::spam;
        if (is_spam) {
            predicted_spam ? ++cm.tp : ++cm.fn;
        } else {
            predicted_spam ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

MetricsReport derive(const ConfusionMatrix& cm) {
    if (cm.positives() == 0) {
        throw MetricError("metrics undefined: no positive instances (TP+FN = 0)");
    }
    if (cm.negatives() == 0) {
        throw MetricError("metrics undefined: no negative instances (TN+FP = 0)");
    }
    MetricsReport r;
    r.counts = cm;
    r.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.positives());
    r.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.negatives());
    r.efficiency = 0.5 * (r.sensitivity + r.specificity);
    r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    return r;
}

std::string metrics_table_row(const std::string& name, const MetricsReport& m,
                              double train_seconds) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-8s %.4f  %.4f  %.4f  %.4f  %.3f", name.c_str(),
                  m.sensitivity, m.specificity, m.efficiency, m.accuracy, train_seconds);
    return buf;
}

} // namespace spamnet
