#include "spamnet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "spamnet/errors.hpp"
#include "spamnet/rng.hpp"

namespace spamnet {

std::size_t Corpus::spam_count() const {
    std::size_t n = 0;
    for (const CorpusRow& r : rows) n += r.label == Label::spam;
    return n;
}

std::size_t Corpus::ham_count() const { return rows.size() - spam_count(); }

double Corpus::spam_fraction() const {
    return rows.empty() ? 0.0 : static_cast<double>(spam_count()) / static_cast<double>(rows.size());
}

void Corpus::validate() const {
    const std::size_t width = feature_count();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].features.size() != width) {
            throw Error("corpus row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].features.size()) + " features, schema needs " +
                        std::to_string(width));
        }
        for (double v : rows[i].features) {
            if (!std::isfinite(v)) throw Error("corpus row " + std::to_string(i) + ": non-finite value");
        }
    }
}

Corpus Corpus::select_groups(GroupMask keep) const {
    if ((keep & groups) != keep) {
        throw SchemaError("cannot select groups '" + groups_to_string(keep) +
                          "' from a corpus holding '" + groups_to_string(groups) + "'");
    }
    // Column ranges of each group within this corpus's schema.
    Corpus out;
    out.groups = keep;
    out.rows.reserve(rows.size());
    std::vector<std::pair<std::size_t, std::size_t>> spans; // offset, length
    std::size_t offset = 0;
    for (GroupMask bit : {static_cast<GroupMask>(kGroupUrl), static_cast<GroupMask>(kGroupContent),
                          static_cast<GroupMask>(kGroupLinks)}) {
        if (!(groups & bit)) continue;
        const std::size_t len = spamnet::feature_count(bit);
        if (keep & bit) spans.emplace_back(offset, len);
        offset += len;
    }
    for (const CorpusRow& row : rows) {
        CorpusRow r;
        r.label = row.label;
        r.source_id = row.source_id;
        for (auto [off, len] : spans) {
            r.features.insert(r.features.end(), row.features.begin() + off,
                              row.features.begin() + off + len);
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

// Header must be whole groups in canonical order plus `label`.
GroupMask groups_from_header(const std::vector<std::string>& header, const std::string& path) {
    if (header.empty() || header.back() != "label") {
        throw CsvError(path + ": header must end in a 'label' column", 1);
    }
    const std::vector<std::string> columns(header.begin(), header.end() - 1);
    for (GroupMask mask = 1; mask <= kAllGroups; ++mask) {
        if (feature_names(mask) == columns) return mask;
    }
    throw CsvError(path + ": header does not name a canonical feature-group subset", 1);
}

} // namespace

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open corpus: " + path);
    std::string line;
    if (!std::getline(in, line)) throw CsvError(path + ": missing header", 1);

    Corpus corpus;
    corpus.groups = groups_from_header(split_csv_line(line), path);
    const std::size_t width = corpus.feature_count();

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != width + 1) {
            throw CsvError(path + " line " + std::to_string(line_no) + ": expected " +
                               std::to_string(width + 1) + " columns, got " +
                               std::to_string(fields.size()),
                           line_no);
        }
        CorpusRow row;
        row.features.reserve(width);
        for (std::size_t i = 0; i < width; ++i) {
            const char* begin = fields[i].c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0' || !std::isfinite(v)) {
                throw CsvError(path + " line " + std::to_string(line_no) + ": bad number '" +
                                   fields[i] + "'",
                               line_no);
            }
            row.features.push_back(v);
        }
        try {
            row.label = label_from_string(fields.back());
        } catch (const Error&) {
            throw CsvError(path + " line " + std::to_string(line_no) + ": unknown label '" +
                               fields.back() + "'",
                           line_no);
        }
        row.source_id = "line-" + std::to_string(line_no);
        corpus.rows.push_back(std::move(row));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    corpus.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open for writing: " + path);
    const std::vector<std::string> names = corpus.feature_names();
    for (const std::string& n : names) out << n << ',';
    out << "label\n";
    char buf[64];
    for (const CorpusRow& row : corpus.rows) {
        for (double v : row.features) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << buf << ',';
        }
        out << to_string(row.label) << '\n';
    }
    if (!out) throw CsvError("write failed: " + path);
}

std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ConfigError("split: train_fraction must be in (0,1)");
    }
    if (corpus.spam_count() == 0 || corpus.ham_count() == 0) {
        throw Error("split: corpus must contain both classes");
    }

    Rng rng(spec.seed);
    auto shuffled = [&](std::vector<std::size_t> idx) {
        for (std::size_t i = idx.size(); i > 1; --i) {
            const std::size_t j = rng.bounded(i);
            std::swap(idx[i - 1], idx[j]);
        }
        return idx;
    };

    Corpus train, test;
    train.groups = test.groups = corpus.groups;

    auto assign = [&](const std::vector<std::size_t>& order, std::size_t train_count) {
        for (std::size_t k = 0; k < order.size(); ++k) {
            (k < train_count ? train : test).rows.push_back(corpus.rows[order[k]]);
        }
    };

    if (spec.stratified) {
        std::vector<std::size_t> spam_idx, ham_idx;
        for (std::size_t i = 0; i < corpus.rows.size(); ++i) {
            (corpus.rows[i].label == Label::spam ? spam_idx : ham_idx).push_back(i);
        }
        const auto train_count = [&](std::size_t class_n) {
            return static_cast<std::size_t>(
                std::llround(spec.train_fraction * static_cast<double>(class_n)));
        };
        const std::size_t spam_train = train_count(spam_idx.size());
        const std::size_t ham_train = train_count(ham_idx.size());
        if (spam_train == 0 || spam_train == spam_idx.size() || ham_train == 0 ||
            ham_train == ham_idx.size()) {
            throw Error("split: corpus too small to give both classes to both sides");
        }
        assign(shuffled(std::move(spam_idx)), spam_train);
        assign(shuffled(std::move(ham_idx)), ham_train);
    } else {
        std::vector<std::size_t> idx(corpus.rows.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        const std::size_t train_count = static_cast<std::size_t>(
            std::llround(spec.train_fraction * static_cast<double>(idx.size())));
        if (train_count == 0 || train_count == idx.size()) {
            throw Error("split: corpus too small for the requested fraction");
        }
        assign(shuffled(std::move(idx)), train_count);
    }
    return {std::move(train), std::move(test)};
}

NormalizationStats fit_normalizer(const Corpus& train) {
    if (train.rows.empty()) throw Error("fit_normalizer: empty training corpus");
    train.validate();
    const std::size_t width = train.feature_count();
    NormalizationStats stats;
    stats.min.assign(width, std::numeric_limits<double>::infinity());
    stats.max.assign(width, -std::numeric_limits<double>::infinity());
    for (const CorpusRow& row : train.rows) {
        for (std::size_t i = 0; i < width; ++i) {
            stats.min[i] = std::min(stats.min[i], row.features[i]);
            stats.max[i] = std::max(stats.max[i], row.features[i]);
        }
    }
    return stats;
}

Corpus apply_normalizer(const NormalizationStats& stats, const Corpus& corpus,
                        std::size_t* clamped_count) {
    if (stats.min.size() != corpus.feature_count()) {
        throw SchemaError("normalizer width does not match corpus schema");
    }
    Corpus out = corpus;
    std::size_t clamped = 0;
    for (CorpusRow& row : out.rows) {
        for (std::size_t i = 0; i < row.features.size(); ++i) {
            const double lo = stats.min[i], hi = stats.max[i];
            double v;
            if (hi <= lo) {
                v = 0.0; // constant feature
            } else {
                v = -1.0 + 2.0 * (row.features[i] - lo) / (hi - lo);
                if (v < -1.0) {
                    v = -1.0;
                    ++clamped;
                } else if (v > 1.0) {
                    v = 1.0;
                    ++clamped;
                }
            }
            row.features[i] = v;
        }
    }
    if (clamped_count) *clamped_count = clamped;
    return out;
}

namespace {

enum class SynthKind { boolean, fraction, count };

struct SynthFeature {
    SynthKind kind;
    double ham_mean;
    double sigma;     // within-class std of the continuous kinds
    double direction; // +1 when spam shifts the value up
};

// Class-conditional generators per canonical feature, chosen so every
// sample respects the schema invariants (booleans 0/1, fractions [0,1],
// counts >= 0).
const SynthFeature kSynthTable[31] = {
    {SynthKind::boolean, 0.70, 0.0, -1},  // url_has_ssl
    {SynthKind::count, 40.0, 10.0, +1},   // url_length
    {SynthKind::boolean, 0.70, 0.0, -1},  // url_not_subdomain
    {SynthKind::boolean, 0.15, 0.0, -1},  // url_authoritative_tld
    {SynthKind::boolean, 0.10, 0.0, +1},  // url_repeated_alpha
    {SynthKind::boolean, 0.10, 0.0, +1},  // url_deep_subdomain
    {SynthKind::boolean, 0.10, 0.0, +1},  // url_digit_symbol_heavy
    {SynthKind::boolean, 0.05, 0.0, +1},  // url_ip_host
    {SynthKind::boolean, 0.20, 0.0, -1},  // url_top_site
    {SynthKind::count, 12.0, 4.0, +1},    // url_domain_length
    {SynthKind::count, 20000.0, 5000.0, -1}, // content_html_length
    {SynthKind::count, 400.0, 100.0, -1}, // content_word_count
    {SynthKind::count, 2500.0, 600.0, -1},// content_text_length
    {SynthKind::count, 10.0, 4.0, +1},    // content_image_count
    {SynthKind::count, 120.0, 40.0, +1},  // content_meta_description_length
    {SynthKind::boolean, 0.50, 0.0, -1},  // content_has_h2
    {SynthKind::boolean, 0.60, 0.0, -1},  // content_has_h1
    {SynthKind::boolean, 0.30, 0.0, +1},  // content_has_video
    {SynthKind::count, 2.0, 2.0, +1},     // content_ad_count
    {SynthKind::count, 40.0, 15.0, +1},   // content_title_length
    {SynthKind::fraction, 0.55, 0.08, -1},// content_compression_ratio
    {SynthKind::fraction, 0.15, 0.05, +1},// content_text_to_html_ratio
    {SynthKind::fraction, 0.60, 0.15, -1},// content_image_alt_fraction
    {SynthKind::boolean, 0.05, 0.0, +1},  // content_obfuscated_js
    {SynthKind::fraction, 0.02, 0.01, +1},// content_call_to_action_fraction
    {SynthKind::fraction, 0.40, 0.08, -1},// content_stopword_fraction
    {SynthKind::count, 25.0, 8.0, -1},    // links_internal_count
    {SynthKind::fraction, 0.10, 0.05, +1},// links_self_fraction
    {SynthKind::count, 10.0, 4.0, +1},    // links_external_count
    {SynthKind::fraction, 0.20, 0.06, +1},// links_anchor_text_fraction
    {SynthKind::count, 60.0, 20.0, +1},   // links_anchor_word_count
};

double synth_value(const SynthFeature& f, bool spam, double separation, Rng& rng) {
    switch (f.kind) {
    case SynthKind::boolean: {
        double p = f.ham_mean;
        if (spam) p = std::clamp(p + f.direction * 0.1 * separation, 0.02, 0.98);
        return rng.bernoulli(p) ? 1.0 : 0.0;
    }
    case SynthKind::fraction: {
        const double mean = spam ? f.ham_mean + f.direction * separation * f.sigma : f.ham_mean;
        return std::clamp(mean + f.sigma * rng.gaussian(), 0.0, 1.0);
    }
    case SynthKind::count: {
        const double mean = spam ? f.ham_mean + f.direction * separation * f.sigma : f.ham_mean;
        return std::max(0.0, std::round(mean + f.sigma * rng.gaussian()));
    }
    }
    return 0.0;
}

} // namespace

Corpus generate_synthetic(std::size_t n, double spam_fraction, double separation,
                          std::uint64_t seed) {
    if (n < 10) throw ConfigError("generate_synthetic: need n >= 10");
    if (!(spam_fraction > 0.0 && spam_fraction < 1.0)) {
        throw ConfigError("generate_synthetic: spam_fraction must be in (0,1)");
    }
    if (separation < 0.0) throw ConfigError("generate_synthetic: separation must be >= 0");

    const std::size_t spam_rows =
        static_cast<std::size_t>(std::llround(spam_fraction * static_cast<double>(n)));

    Rng rng(seed);
    Corpus corpus;
    corpus.groups = kAllGroups;
    corpus.rows.reserve(n);
    char id[32];
    for (std::size_t i = 0; i < n; ++i) {
        const bool spam = i < spam_rows;
        CorpusRow row;
        row.label = spam ? Label::spam : Label::ham;
        std::snprintf(id, sizeof(id), "synth-%04zu", i);
        row.source_id = id;
        row.features.reserve(31);
        for (const SynthFeature& f : kSynthTable) {
            row.features.push_back(synth_value(f, spam, separation, rng));
        }
        corpus.rows.push_back(std::move(row));
    }
    // Mix the classes; keeps unstratified downstream use sane.
    for (std::size_t i = corpus.rows.size(); i > 1; --i) {
        const std::size_t j = rng.bounded(i);
        std::swap(corpus.rows[i - 1], corpus.rows[j]);
    }
    return corpus;
}

double label_to_target(Label label) { return label == Label::spam ? 1.0 : -1.0; }

TrainingSet corpus_to_training_set(const Corpus& corpus) {
    TrainingSet set;
    set.patterns.reserve(corpus.rows.size());
    for (const CorpusRow& row : corpus.rows) {
        set.patterns.push_back({row.features, {label_to_target(row.label)}});
    }
    return set;
}

Label classify_output(double network_output) {
    return network_output >= 0.0 ? Label::spam : Label::ham;
}

} // namespace spamnet
