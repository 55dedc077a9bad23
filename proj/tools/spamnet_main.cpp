#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spamnet/commands.hpp"
#include "spamnet/errors.hpp"
#include "spamnet/features.hpp"
#include "spamnet/trainers.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spamnet: web-spam page features, MLP trainers, and the experiment grid"};
    app.require_subcommand(1);

    spamnet::ExtractOptions extract_opts;
    std::string extract_groups = "all";
    CLI::App* extract = app.add_subcommand("extract", "Extract features from <id>.url/<id>.html pairs");
    extract->add_option("--pages", extract_opts.pages_dir, "Directory of page files")->required();
    extract->add_option("--out", extract_opts.out_csv, "Output corpus CSV")->required();
    extract->add_option("--groups", extract_groups, "Feature groups (url,content,links|all)");
    extract->add_option("--data-dir", extract_opts.data_dir, "Lexicon data directory");

    spamnet::TrainOptions train_opts;
    std::string train_algorithm = "cg";
    std::string train_groups;
    CLI::App* train = app.add_subcommand("train", "Train a classifier on a corpus CSV");
    train->add_option("--corpus", train_opts.corpus_csv, "Corpus CSV")->required();
    train->add_option("--out", train_opts.model_out, "Model file to write")->required();
    train->add_option("--log", train_opts.log_out, "Training log path (default <model>.log)");
    train->add_option("--algorithm", train_algorithm, "cg|rprop|lm|lm-br");
    train->add_option("--hidden", train_opts.hidden, "Hidden neurons (default 10)");
    train->add_option("--iterations", train_opts.iterations, "Iteration budget (default 100)");
    train->add_option("--learning-rate", train_opts.learning_rate, "CG fallback step scale");
    train->add_option("--target-error", train_opts.target_error, "Early-stop error");
    train->add_option("--seed", train_opts.seed, "Initialization seed");
    train->add_option("--groups", train_groups, "Train on a feature subset of the corpus");

    spamnet::EvaluateOptions eval_opts;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a model against a corpus CSV");
    evaluate->add_option("--model", eval_opts.model_path, "Model file")->required();
    evaluate->add_option("--corpus", eval_opts.corpus_csv, "Corpus CSV")->required();

    spamnet::ExperimentOptions exp_opts;
    CLI::App* experiment = app.add_subcommand("experiment", "Run the full experiment grid");
    experiment->add_option("--corpus", exp_opts.corpus_csv, "Corpus CSV (full 31-feature schema)")
        ->required();
    experiment->add_option("--config", exp_opts.plan_json_path, "Experiment plan JSON");
    experiment->add_option("--out-dir", exp_opts.out_dir, "Directory for result tables");
    experiment->add_option("--readings", exp_opts.readings, "Readings per cell override");
    CLI::Option* seed_opt = experiment->add_option("--seed", exp_opts.seed, "Plan seed override");
    experiment->add_option("--workers", exp_opts.workers,
                           "Parallel cell workers (SPAMNET_WORKERS overrides)");

    spamnet::SynthOptions synth_opts;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
    synth->add_option("--out", synth_opts.out_csv, "Output corpus CSV")->required();
    synth->add_option("--rows", synth_opts.rows, "Row count (default 368)");
    synth->add_option("--spam-fraction", synth_opts.spam_fraction, "Spam share (default 0.3)");
    synth->add_option("--separation", synth_opts.separation, "Class separation (default 3)");
    synth->add_option("--seed", synth_opts.seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*extract) {
            extract_opts.groups = spamnet::groups_from_string(extract_groups);
            const std::size_t n = spamnet::cmd_extract(extract_opts, std::cerr);
            std::cout << "extracted " << n << " records to " << extract_opts.out_csv << '\n';
        } else if (*train) {
            train_opts.algorithm = spamnet::algorithm_from_string(train_algorithm);
            if (!train_groups.empty()) train_opts.groups = spamnet::groups_from_string(train_groups);
            spamnet::cmd_train(train_opts, std::cout);
        } else if (*evaluate) {
            spamnet::cmd_evaluate(eval_opts, std::cout);
        } else if (*experiment) {
            exp_opts.seed_set = seed_opt->count() > 0;
            if (!spamnet::cmd_experiment(exp_opts, std::cout)) {
                std::cerr << "experiment: one or more grid cells failed\n";
                return 1;
            }
        } else if (*synth) {
            spamnet::cmd_synth(synth_opts, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
