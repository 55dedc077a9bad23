#include "spamnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "spamnet/errors.hpp"
#include "spamnet/rng.hpp"
#include "spamnet/trainers.hpp"

namespace spamnet {

void ExperimentPlan::validate() const {
    if (subsets.empty()) throw ConfigError("plan: need at least one feature subset");
    if (algorithms.empty()) throw ConfigError("plan: need at least one algorithm");
    if (readings < 1) throw ConfigError("plan: readings must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("plan: train_fraction must be in (0,1)");
    }
}

ExperimentPlan plan_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("plan: bad JSON: ") + e.what());
    }
    ExperimentPlan plan;
    for (const auto& [key, value] : j.items()) {
        if (key == "subsets") {
            plan.subsets.clear();
            for (const auto& s : value) plan.subsets.push_back(groups_from_string(s));
        } else if (key == "algorithms") {
            plan.algorithms.clear();
            for (const auto& a : value) plan.algorithms.push_back(algorithm_from_string(a));
        } else if (key == "hidden_small") {
            plan.hidden_small = value.get<std::size_t>();
        } else if (key == "hidden_large") {
            plan.hidden_large = value.get<std::size_t>();
        } else if (key == "large_hidden_min_features") {
            plan.large_hidden_min_features = value.get<std::size_t>();
        } else if (key == "readings") {
            plan.readings = value.get<std::size_t>();
        } else if (key == "seed") {
            plan.seed = value.get<std::uint64_t>();
        } else if (key == "train_fraction") {
            plan.train_fraction = value.get<double>();
        } else if (key == "resplit_each_reading") {
            plan.resplit_each_reading = value.get<bool>();
        } else if (key == "max_iterations") {
            plan.max_iterations = value.get<std::size_t>();
        } else if (key == "learning_rate") {
            plan.learning_rate = value.get<double>();
        } else if (key == "workers") {
            plan.workers = value.get<std::size_t>();
        } else {
            throw ConfigError("plan: unknown key '" + key + "'");
        }
    }
    plan.validate();
    return plan;
}

namespace {

std::string subset_title(GroupMask groups) {
    std::string names;
    auto add = [&](const char* n) {
        if (!names.empty()) names += " + ";
        names += n;
    };
    if (groups & kGroupUrl) add("URL");
    if (groups & kGroupContent) add("Content");
    if (groups & kGroupLinks) add("Links");
    return names + " features (" + std::to_string(feature_count(groups)) + " features)";
}

std::uint64_t cell_seed(std::uint64_t base, GroupMask groups, Algorithm algorithm,
                        std::size_t hidden, std::size_t reading) {
    std::uint64_t s = mix_seed(base, groups);
    s = mix_seed(s, 0x100 + static_cast<std::uint64_t>(algorithm));
    s = mix_seed(s, 0x10000 + hidden);
    return mix_seed(s, reading);
}

std::uint64_t split_seed_for(std::uint64_t base, GroupMask groups, std::size_t reading,
                             bool resplit) {
    // Shared across algorithms and hidden sizes so a table compares them
    // on identical splits.
    return mix_seed(mix_seed(base, 0xabcd0000 + groups), resplit ? reading + 1 : 0);
}

CellResult run_cell(const ExperimentPlan& plan, const Corpus& subset_corpus, GroupMask groups,
                    Algorithm algorithm, std::size_t hidden) {
    CellResult cell;
    cell.groups = groups;
    cell.algorithm = algorithm;
    cell.hidden = hidden;
    try {
        double sens = 0, spec = 0, eff = 0, acc = 0, seconds = 0;
        for (std::size_t reading = 0; reading < plan.readings; ++reading) {
            SplitSpec split_spec;
            split_spec.train_fraction = plan.train_fraction;
            split_spec.seed = split_seed_for(plan.seed, groups, reading, plan.resplit_each_reading);
            auto [train_rows, test_rows] = split(subset_corpus, split_spec);

            const NormalizationStats stats = fit_normalizer(train_rows);
            const Corpus train_norm = apply_normalizer(stats, train_rows);
            const Corpus test_norm = apply_normalizer(stats, test_rows);

            Network net = Network::initialize({train_norm.feature_count(), hidden, 1},
                                              ActivationSpec::bipolar(),
                                              cell_seed(plan.seed, groups, algorithm, hidden, reading));
            TrainerConfig config;
            config.algorithm = algorithm;
            config.max_iterations = plan.max_iterations;
            config.learning_rate = plan.learning_rate;
            const TrainingSet training_set = corpus_to_training_set(train_norm);
            const TrainingReport report = train(net, training_set, config);

            std::vector<Label> predictions, truths;
            predictions.reserve(test_norm.rows.size());
            truths.reserve(test_norm.rows.size());
            for (const CorpusRow& row : test_norm.rows) {
                predictions.push_back(classify_output(net.predict(row.features)[0]));
                truths.push_back(row.label);
            }
            const MetricsReport metrics = derive(tally(predictions, truths));
            sens += metrics.sensitivity;
            spec += metrics.specificity;
            eff += metrics.efficiency;
            acc += metrics.accuracy;
            seconds += report.train_seconds;
        }
        const double r = static_cast<double>(plan.readings);
        cell.readings = plan.readings;
        cell.sensitivity = sens / r;
        cell.specificity = spec / r;
        cell.efficiency = eff / r;
        cell.accuracy = acc / r;
        cell.train_seconds = seconds / r;
    } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
    }
    return cell;
}

std::size_t resolve_workers(const ExperimentPlan& plan, std::size_t cells) {
    if (const char* env = std::getenv("SPAMNET_WORKERS"); env && *env) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<std::size_t>(static_cast<std::size_t>(v), cells);
    }
    if (plan.workers >= 1) return std::min(plan.workers, cells);
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min<std::size_t>(hw == 0 ? 1 : hw, cells);
}

} // namespace

std::string ResultTable::title() const { return subset_title(groups); }

std::string ResultTable::to_markdown() const {
    std::ostringstream out;
    out << "### " << title() << "\n";

    // Hidden sizes in row order.
    std::vector<std::size_t> hidden_sizes;
    for (const CellResult& r : rows) {
        if (std::find(hidden_sizes.begin(), hidden_sizes.end(), r.hidden) == hidden_sizes.end()) {
            hidden_sizes.push_back(r.hidden);
        }
    }
    for (std::size_t hidden : hidden_sizes) {
        if (hidden_sizes.size() > 1) {
            out << "\nHidden neurons: " << hidden << "\n";
        }
        out << "\n| Algorithm | Sensitivity (TPR) | Specificity (TNR) | Efficiency | Accuracy | "
               "Training Time (s) |\n";
        out << "|---|---|---|---|---|---|\n";

        std::vector<const CellResult*> block;
        for (const CellResult& r : rows) {
            if (r.hidden == hidden) block.push_back(&r);
        }
        // Best markers: max for the four metrics, min for time, over the
        // block's successful rows.
        double best[5] = {-1, -1, -1, -1, std::numeric_limits<double>::infinity()};
        for (const CellResult* r : block) {
            if (r->failed) continue;
            best[0] = std::max(best[0], r->sensitivity);
            best[1] = std::max(best[1], r->specificity);
            best[2] = std::max(best[2], r->efficiency);
            best[3] = std::max(best[3], r->accuracy);
            best[4] = std::min(best[4], r->train_seconds);
        }
        char buf[64];
        auto metric = [&](double v, double b) {
            std::snprintf(buf, sizeof(buf), v == b ? "**%.4f**" : "%.4f", v);
            return std::string(buf);
        };
        auto time_col = [&](double v, double b) {
            std::snprintf(buf, sizeof(buf), v == b ? "**%.3f**" : "%.3f", v);
            return std::string(buf);
        };
        for (const CellResult* r : block) {
            std::string name = to_string(r->algorithm);
            for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (r->algorithm == Algorithm::lm_br) name = "LM+BR";
            if (r->algorithm == Algorithm::rprop) name = "RB";
            if (r->failed) {
                out << "| " << name << " | failed: " << r->error << " | | | | |\n";
                continue;
            }
            out << "| " << name << " | " << metric(r->sensitivity, best[0]) << " | "
                << metric(r->specificity, best[1]) << " | " << metric(r->efficiency, best[2])
                << " | " << metric(r->accuracy, best[3]) << " | "
                << time_col(r->train_seconds, best[4]) << " |\n";
        }
    }
    return out.str();
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    out << "subset,hidden,algorithm,sensitivity,specificity,efficiency,accuracy,train_seconds,"
           "readings,failed\n";
    char buf[256];
    for (const CellResult& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%zu,%d\n",
                      groups_to_string(r.groups).c_str(), r.hidden,
                      to_string(r.algorithm).c_str(), r.sensitivity, r.specificity, r.efficiency,
                      r.accuracy, r.train_seconds, r.readings, r.failed ? 1 : 0);
        out << buf;
    }
    return out.str();
}

std::vector<ResultTable> run_experiment(const ExperimentPlan& plan, const Corpus& corpus) {
    plan.validate();
    corpus.validate();

    struct CellSpec {
        std::size_t table;
        GroupMask groups;
        Algorithm algorithm;
        std::size_t hidden;
    };
    std::vector<CellSpec> specs;
    std::vector<ResultTable> tables(plan.subsets.size());
    std::vector<Corpus> subset_corpora;
    subset_corpora.reserve(plan.subsets.size());

    for (std::size_t t = 0; t < plan.subsets.size(); ++t) {
        const GroupMask groups = plan.subsets[t];
        tables[t].groups = groups;
        subset_corpora.push_back(corpus.select_groups(groups));
        std::vector<std::size_t> hidden_sizes{plan.hidden_small};
        if (feature_count(groups) >= plan.large_hidden_min_features &&
            plan.hidden_large != plan.hidden_small) {
            hidden_sizes.push_back(plan.hidden_large);
        }
        for (std::size_t hidden : hidden_sizes) {
            for (Algorithm algorithm : plan.algorithms) {
                specs.push_back({t, groups, algorithm, hidden});
            }
        }
    }

    std::vector<CellResult> results(specs.size());
    const std::size_t workers = resolve_workers(plan, specs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const CellSpec& s = specs[i];
            results[i] = run_cell(plan, subset_corpora[s.table], s.groups, s.algorithm, s.hidden);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= specs.size()) return;
                    const CellSpec& s = specs[i];
                    results[i] =
                        run_cell(plan, subset_corpora[s.table], s.groups, s.algorithm, s.hidden);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        tables[specs[i].table].rows.push_back(std::move(results[i]));
    }
    return tables;
}

} // namespace spamnet
