#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "helpers.hpp"
#include "spamnet/commands.hpp"
#include "spamnet/dataset.hpp"
#include "spamnet/errors.hpp"
#include "spamnet/model_io.hpp"

using namespace spamnet;
using spamnet::test::temp_path;

namespace {

struct DataDirGuard {
    DataDirGuard() { setenv("SPAMNET_DATA_DIR", SPAMNET_TEST_DATA_DIR, 1); }
};
const DataDirGuard guard;

std::string fixtures_pages() { return std::string(SPAMNET_TEST_FIXTURES) + "/pages"; }

} // namespace

TEST_CASE("cmd_extract writes a full csv over the fixture pages") {
    ExtractOptions options;
    options.pages_dir = fixtures_pages();
    options.out_csv = temp_path("pages.csv");
    std::ostringstream diag;
    const std::size_t n = cmd_extract(options, diag);
    CHECK(n == 3); // the corrupt page still extracts leniently
    CHECK(diag.str().empty());

    const Corpus corpus = load_corpus(options.out_csv);
    CHECK(corpus.groups == kAllGroups);
    CHECK(corpus.feature_count() == 31);
    REQUIRE(corpus.rows.size() == 3);

    // Rows are sorted by id: 001 ham article, 002 spam, 003 corrupt.
    const auto names = corpus.feature_names();
    const auto column = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) return i;
        }
        FAIL("unknown column ", name);
        return std::size_t(0);
    };
    const CorpusRow& ham = corpus.rows[0];
    const CorpusRow& spam = corpus.rows[1];
    CHECK(ham.label == Label::ham);
    CHECK(spam.label == Label::spam);
    CHECK(ham.features[column("content_obfuscated_js")] == 0.0);
    CHECK(spam.features[column("content_obfuscated_js")] == 1.0);
    CHECK(ham.features[column("url_has_ssl")] == 1.0);
    CHECK(spam.features[column("url_has_ssl")] == 0.0);
    CHECK(spam.features[column("url_digit_symbol_heavy")] == 1.0);
    CHECK(spam.features[column("content_ad_count")] >= 2.0);
    CHECK(ham.features[column("content_has_h1")] == 1.0);
}

TEST_CASE("cmd_extract respects group subsets and empty dirs fail") {
    ExtractOptions options;
    options.pages_dir = fixtures_pages();
    options.out_csv = temp_path("url_only.csv");
    options.groups = kGroupUrl;
    std::ostringstream diag;
    cmd_extract(options, diag);
    CHECK(load_corpus(options.out_csv).feature_count() == 10);

    ExtractOptions empty;
    const std::string dir = temp_path("empty-dir");
    std::filesystem::create_directories(dir);
    empty.pages_dir = dir;
    empty.out_csv = temp_path("none.csv");
    std::ostringstream diag2;
    CHECK_THROWS_AS(cmd_extract(empty, diag2), Error);
}

TEST_CASE("train then evaluate round trip on a separable corpus") {
    const std::string corpus_path = temp_path("synth.csv");
    const Corpus corpus = generate_synthetic(200, 0.3, 4.0, 17);
    auto [train_rows, test_rows] = split(corpus, {0.8, 3, true});
    const std::string train_path = temp_path("train.csv");
    const std::string test_path = temp_path("test.csv");
    save_corpus(train_rows, train_path);
    save_corpus(test_rows, test_path);
    save_corpus(corpus, corpus_path);

    TrainOptions train_options;
    train_options.corpus_csv = train_path;
    train_options.model_out = temp_path("model.nn");
    train_options.algorithm = Algorithm::rprop;
    train_options.iterations = 60;
    train_options.seed = 4;
    std::ostringstream diag;
    cmd_train(train_options, diag);
    CHECK(std::filesystem::exists(train_options.model_out));
    CHECK(std::filesystem::exists(train_options.model_out + ".log"));

    EvaluateOptions eval_options;
    eval_options.model_path = train_options.model_out;
    eval_options.corpus_csv = test_path;
    std::ostringstream out;
    const MetricsReport metrics = cmd_evaluate(eval_options, out);
    CHECK(metrics.accuracy >= 0.9);
    CHECK(out.str().find("accuracy") != std::string::npos);

    // Same seed and inputs give byte-identical models.
    TrainOptions again = train_options;
    again.model_out = temp_path("model2.nn");
    cmd_train(again, diag);
    std::ifstream a(train_options.model_out, std::ios::binary), b(again.model_out, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
}

TEST_CASE("zero-iteration training stores the untouched initialization") {
    const Corpus corpus = generate_synthetic(50, 0.4, 2.0, 23);
    const std::string corpus_path = temp_path("c.csv");
    save_corpus(corpus, corpus_path);

    TrainOptions options;
    options.corpus_csv = corpus_path;
    options.model_out = temp_path("frozen.nn");
    options.iterations = 0;
    options.seed = 99;
    std::ostringstream diag;
    cmd_train(options, diag);

    const ModelFile model = load_model(options.model_out);
    const Network expected =
        Network::initialize({31, 10, 1}, ActivationSpec::bipolar(), 99);
    CHECK(model.network == expected);
}

TEST_CASE("evaluate rejects a corpus whose schema differs from the model") {
    const Corpus corpus = generate_synthetic(50, 0.4, 2.0, 31);
    const std::string full_path = temp_path("full.csv");
    save_corpus(corpus, full_path);
    const std::string url_path = temp_path("url.csv");
    save_corpus(corpus.select_groups(kGroupUrl), url_path);

    TrainOptions train_options;
    train_options.corpus_csv = url_path;
    train_options.model_out = temp_path("url-model.nn");
    train_options.iterations = 5;
    std::ostringstream diag;
    cmd_train(train_options, diag);

    EvaluateOptions eval_options;
    eval_options.model_path = train_options.model_out;
    eval_options.corpus_csv = full_path;
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_evaluate(eval_options, out), SchemaError);
}

TEST_CASE("a zero-weight model predicts spam everywhere (tie rule)") {
    const Corpus corpus = generate_synthetic(40, 0.5, 1.0, 7);
    ModelFile model(Network({31, 10, 1}, ActivationSpec::bipolar()));
    model.feature_groups = {"url", "content", "links"};
    model.feature_names = feature_names(kAllGroups);
    model.normalization_scheme = "minmax";
    model.feature_min.assign(31, 0.0);
    model.feature_max.assign(31, 1.0);
    const std::string model_path = temp_path("zero.nn");
    save_model(model, model_path);
    const std::string corpus_path = temp_path("any.csv");
    save_corpus(corpus, corpus_path);

    std::ostringstream out;
    const MetricsReport metrics = cmd_evaluate({model_path, corpus_path}, out);
    CHECK(metrics.sensitivity == 1.0); // every spam page caught
    CHECK(metrics.specificity == 0.0); // every ham page flagged
    CHECK(metrics.counts.tn == 0);
    CHECK(metrics.counts.fn == 0);
}

TEST_CASE("cmd_experiment writes tables and reports success") {
    const Corpus corpus = generate_synthetic(80, 0.3, 3.0, 13);
    const std::string corpus_path = temp_path("exp.csv");
    save_corpus(corpus, corpus_path);

    const std::string plan_path = temp_path("plan.json");
    {
        std::ofstream plan(plan_path);
        plan << R"({"subsets": ["links"], "algorithms": ["cg"], "readings": 1,
                    "max_iterations": 5, "workers": 1})";
    }
    ExperimentOptions options;
    options.corpus_csv = corpus_path;
    options.plan_json_path = plan_path;
    options.out_dir = temp_path("results");
    std::ostringstream out;
    CHECK(cmd_experiment(options, out));
    CHECK(std::filesystem::exists(std::filesystem::path(options.out_dir) / "results_links.md"));
    CHECK(std::filesystem::exists(std::filesystem::path(options.out_dir) / "results_links.csv"));
    CHECK(std::filesystem::exists(std::filesystem::path(options.out_dir) / "results.md"));
    CHECK(out.str().find("Links features (5 features)") != std::string::npos);
}

TEST_CASE("cmd_synth writes a loadable corpus") {
    SynthOptions options;
    options.out_csv = temp_path("synth-cli.csv");
    options.rows = 60;
    std::ostringstream out;
    cmd_synth(options, out);
    const Corpus corpus = load_corpus(options.out_csv);
    CHECK(corpus.rows.size() == 60);
    CHECK(out.str().find("60 rows") != std::string::npos);
}
