#include "spamnet/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spamnet/dataset.hpp"
#include "spamnet/errors.hpp"
#include "spamnet/lexicons.hpp"
#include "spamnet/model_io.hpp"
#include "spamnet/network.hpp"
#include "spamnet/trainers.hpp"

namespace spamnet {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const std::string& text) {
    const std::size_t nl = text.find_first_of("\r\n");
    std::string line = nl == std::string::npos ? text : text.substr(0, nl);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    return line.substr(b);
}

// Pages live either flat in pages_dir or inside spam/ and ham/
// subdirectories that double as labels.
std::vector<PageRecord> collect_pages(const std::string& pages_dir, std::ostream& diag) {
    if (!fs::is_directory(pages_dir)) throw Error("not a directory: " + pages_dir);

    std::vector<fs::path> url_files;
    for (const auto& entry : fs::recursive_directory_iterator(pages_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".url") {
            url_files.push_back(entry.path());
        }
    }
    std::sort(url_files.begin(), url_files.end());

    std::vector<PageRecord> records;
    for (const fs::path& url_file : url_files) {
        PageRecord record;
        record.source_id = url_file.stem().string();
        try {
            record.url = first_line(read_file(url_file));
            const fs::path html_file = fs::path(url_file).replace_extension(".html");
            if (!fs::exists(html_file)) {
                throw Error("missing html file: " + html_file.string());
            }
            record.html = read_file(html_file);

            const fs::path label_file = fs::path(url_file).replace_extension(".label");
            if (fs::exists(label_file)) {
                record.label = label_from_string(first_line(read_file(label_file)));
            } else {
                const std::string parent = url_file.parent_path().filename().string();
                if (parent == "spam" || parent == "ham") {
                    record.label = label_from_string(parent);
                }
            }
            records.push_back(std::move(record));
        } catch (const std::exception& e) {
            diag << "extract: skipping '" << record.source_id << "': " << e.what() << '\n';
        }
    }
    return records;
}

} // namespace

std::size_t cmd_extract(const ExtractOptions& options, std::ostream& diag) {
    const Lexicons lexicons =
        Lexicons::load(options.data_dir.empty() ? Lexicons::default_data_dir() : options.data_dir);

    Corpus corpus;
    corpus.groups = options.groups;
    for (PageRecord& record : collect_pages(options.pages_dir, diag)) {
        if (!record.label) {
            diag << "extract: skipping '" << record.source_id
                 << "': no label (.label file or spam/ham directory)\n";
            continue;
        }
        try {
            FeatureVector features = extract(record, options.groups, lexicons);
            CorpusRow row;
            row.features = std::move(features.values);
            row.label = *record.label;
            row.source_id = record.source_id;
            corpus.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            diag << "extract: failed on '" << record.source_id << "': " << e.what() << '\n';
        }
    }
    if (corpus.rows.empty()) throw Error("extract: no extractable records in " + options.pages_dir);
    save_corpus(corpus, options.out_csv);
    return corpus.rows.size();
}

double cmd_train(const TrainOptions& options, std::ostream& diag) {
    Corpus corpus = load_corpus(options.corpus_csv);
    if (options.groups != 0 && options.groups != corpus.groups) {
        corpus = corpus.select_groups(options.groups);
    }

    const NormalizationStats stats = fit_normalizer(corpus);
    const Corpus normalized = apply_normalizer(stats, corpus);

    Network net = Network::initialize({corpus.feature_count(), options.hidden, 1},
                                      ActivationSpec::bipolar(), options.seed);
    TrainerConfig config;
    config.algorithm = options.algorithm;
    config.max_iterations = options.iterations;
    config.learning_rate = options.learning_rate;
    config.target_error = options.target_error;
    config.seed = options.seed;

    const TrainingSet data = corpus_to_training_set(normalized);
    const TrainingReport report = train(net, data, config);

    ModelFile model(std::move(net));
    model.feature_groups = [&] {
        std::vector<std::string> names;
        std::istringstream ss(groups_to_string(corpus.groups));
        std::string tok;
        while (std::getline(ss, tok, ',')) names.push_back(tok);
        return names;
    }();
    model.feature_names = corpus.feature_names();
    model.normalization_scheme = stats.scheme;
    model.feature_min = stats.min;
    model.feature_max = stats.max;
    save_model(model, options.model_out);

    const std::string log_path =
        options.log_out.empty() ? options.model_out + ".log" : options.log_out;
    std::ofstream log(log_path);
    if (!log) throw Error("cannot write training log: " + log_path);
    log << report_to_log(report);
    log << report_to_json(report) << '\n';

    diag << "trained " << to_string(options.algorithm) << " for " << report.iterations()
         << " iterations, E " << report.initial_error << " -> " << report.final_error() << " ("
         << to_string(report.stop) << ", " << report.train_seconds << "s)\n";
    return report.final_error();
}

MetricsReport cmd_evaluate(const EvaluateOptions& options, std::ostream& out) {
    const ModelFile model = load_model(options.model_path);
    const Corpus corpus = load_corpus(options.corpus_csv);

    if (corpus.feature_names() != model.feature_names) {
        throw SchemaError("corpus schema '" + groups_to_string(corpus.groups) +
                          "' does not match the model's trained feature subset");
    }

    NormalizationStats stats;
    stats.scheme = model.normalization_scheme;
    stats.min = model.feature_min;
    stats.max = model.feature_max;
    const Corpus normalized = apply_normalizer(stats, corpus);

    std::vector<Label> predictions, truths;
    predictions.reserve(normalized.rows.size());
    for (const CorpusRow& row : normalized.rows) {
        predictions.push_back(classify_output(model.network.predict(row.features)[0]));
        truths.push_back(row.label);
    }
    const MetricsReport metrics = derive(tally(predictions, truths));

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "sensitivity %.4f\nspecificity %.4f\nefficiency  %.4f\naccuracy    %.4f\n"
                  "tp %llu tn %llu fp %llu fn %llu\n",
                  metrics.sensitivity, metrics.specificity, metrics.efficiency, metrics.accuracy,
                  static_cast<unsigned long long>(metrics.counts.tp),
                  static_cast<unsigned long long>(metrics.counts.tn),
                  static_cast<unsigned long long>(metrics.counts.fp),
                  static_cast<unsigned long long>(metrics.counts.fn));
    out << buf;
    return metrics;
}

bool cmd_experiment(const ExperimentOptions& options, std::ostream& out) {
    ExperimentPlan plan;
    if (!options.plan_json_path.empty()) {
        plan = plan_from_json(read_file(options.plan_json_path));
    }
    if (options.readings > 0) plan.readings = options.readings;
    if (options.seed_set) plan.seed = options.seed;
    if (options.workers > 0) plan.workers = options.workers;

    const Corpus corpus = load_corpus(options.corpus_csv);
    const std::vector<ResultTable> tables = run_experiment(plan, corpus);

    bool all_ok = true;
    std::string combined;
    for (const ResultTable& table : tables) {
        const std::string markdown = table.to_markdown();
        combined += markdown + "\n";
        out << markdown << '\n';
        for (const CellResult& cell : table.rows) all_ok = all_ok && !cell.failed;

        if (!options.out_dir.empty()) {
            fs::create_directories(options.out_dir);
            std::string slug = groups_to_string(table.groups);
            std::replace(slug.begin(), slug.end(), ',', '_');
            std::ofstream md(fs::path(options.out_dir) / ("results_" + slug + ".md"));
            md << markdown;
            std::ofstream csv(fs::path(options.out_dir) / ("results_" + slug + ".csv"));
            csv << table.to_csv();
        }
    }
    if (!options.out_dir.empty()) {
        std::ofstream md(fs::path(options.out_dir) / "results.md");
        md << combined;
    }
    return all_ok;
}

void cmd_synth(const SynthOptions& options, std::ostream& out) {
    const Corpus corpus =
        generate_synthetic(options.rows, options.spam_fraction, options.separation, options.seed);
    save_corpus(corpus, options.out_csv);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "wrote %zu rows (%.1f%% spam) to %s\n", corpus.rows.size(),
                  100.0 * corpus.spam_fraction(), options.out_csv.c_str());
    out << buf;
}

} // namespace spamnet
