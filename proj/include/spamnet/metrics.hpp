#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace spamnet {

// Spam is the positive class throughout.
enum class Label : std::uint8_t { ham = 0, spam = 1 };

inline const char* to_string(Label l) { return l == Label::spam ? "spam" : "ham"; }
Label label_from_string(const std::string& token);

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t positives() const { return tp + fn; }
    std::uint64_t negatives() const { return tn + fp; }
    std::uint64_t total() const { return tp + tn + fp + fn; }
};

struct MetricsReport {
    ConfusionMatrix counts;
    double sensitivity = 0.0; // TP / (TP + FN), recall on spam
    double specificity = 0.0; // TN / (FP + TN)
    double efficiency = 0.0;  // (sensitivity + specificity) / 2
    double accuracy = 0.0;    // (TP + TN) / (P + N)
};

// Counts agreement between predictions and ground truth; spam positive.
// Throws MetricError on empty or mismatched inputs.
ConfusionMatrix tally(std::span<const Label> predictions, std::span<const Label> truths);

// Derives the four measures. Throws MetricError naming the empty class
// when either no positives or no negatives were evaluated.
MetricsReport derive(const ConfusionMatrix& cm);

// One table row: the four metrics to 4 decimals plus a seconds column.
std::string metrics_table_row(const std::string& name, const MetricsReport& metrics,
                              double train_seconds);

} // namespace spamnet
