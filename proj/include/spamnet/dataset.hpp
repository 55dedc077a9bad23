#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spamnet/features.hpp"
#include "spamnet/metrics.hpp"
#include "spamnet/training_data.hpp"

namespace spamnet {

struct CorpusRow {
    std::vector<double> features;
    Label label = Label::ham;
    std::string source_id;
};

// Labeled feature-vector table with a whole-group schema: the columns are
// exactly the canonical features of `groups`, in canonical order.
struct Corpus {
    GroupMask groups = kAllGroups;
    std::vector<CorpusRow> rows;

    std::size_t size() const { return rows.size(); }
    std::size_t feature_count() const { return spamnet::feature_count(groups); }
    std::vector<std::string> feature_names() const { return spamnet::feature_names(groups); }

    std::size_t spam_count() const;
    std::size_t ham_count() const;
    double spam_fraction() const;

    // Keeps only the named groups' columns; they must be a subset of the
    // corpus schema.
    Corpus select_groups(GroupMask keep) const;

    void validate() const; // uniform row widths, finite values
};

// CSV: header of canonical feature names (whole groups, canonical order)
// plus a final `label` column with spam|ham tokens; UTF-8, LF endings,
// values at full precision. Malformed rows are reported with their line
// number.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratified = true;
};

// Disjoint, exhaustive, deterministic per seed. Stratified mode preserves
// the class ratio within one row per class and requires every side to see
// both classes.
std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec);

// Min-max scaling into [-1, 1], fitted on training rows only; constant
// features map to 0. Applying to unseen rows clamps into range.
struct NormalizationStats {
    std::string scheme = "minmax";
    std::vector<double> min;
    std::vector<double> max;
};

NormalizationStats fit_normalizer(const Corpus& train);
Corpus apply_normalizer(const NormalizationStats& stats, const Corpus& corpus,
                        std::size_t* clamped_count = nullptr);

// Class-conditional synthetic corpus over the full 31-feature schema.
// `separation` is the spam/ham mean gap in within-class standard
// deviations for the continuous features (booleans shift their on-rate);
// 0 makes the classes indistinguishable. Deterministic per seed.
Corpus generate_synthetic(std::size_t n, double spam_fraction, double separation,
                          std::uint64_t seed);

// spam -> +1, ham -> -1 targets for the single output neuron.
double label_to_target(Label label);
TrainingSet corpus_to_training_set(const Corpus& corpus);

// Decision rule at the network output: >= 0 reads as spam (the tie at
// exactly 0 counts as spam).
Label classify_output(double network_output);

} // namespace spamnet
