#include <vector>

#include <doctest.h>

#include "spamnet/errors.hpp"
#include "spamnet/metrics.hpp"
#include "spamnet/rng.hpp"

using namespace spamnet;

namespace {

std::vector<Label> labels(std::initializer_list<int> xs) {
    std::vector<Label> out;
    for (int x : xs) out.push_back(x ? Label::spam : Label::ham);
    return out;
}

} // namespace

TEST_CASE("perfect predictions fill the diagonal") {
    const auto truth = labels({1, 1, 1, 1, 1, 0, 0, 0, 0, 0});
    const ConfusionMatrix cm = tally(truth, truth);
    CHECK(cm.tp == 5);
    CHECK(cm.tn == 5);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);
}

TEST_CASE("all-ham predictions count misses only") {
    const auto truth = labels({1, 1, 1, 0, 0, 0, 0, 0, 0, 0});
    const auto pred = labels({0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    const ConfusionMatrix cm = tally(pred, truth);
    CHECK(cm.tp == 0);
    CHECK(cm.fn == 3);
    CHECK(cm.tn == 7);
    CHECK(cm.fp == 0);
}

TEST_CASE("random label pairs agree with a per-instance counting oracle") {
    Rng rng(99);
    std::vector<Label> pred, truth;
    for (int i = 0; i < 100; ++i) {
        pred.push_back(rng.bernoulli(0.5) ? Label::spam : Label::ham);
        truth.push_back(rng.bernoulli(0.3) ? Label::spam : Label::ham);
    }
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (int i = 0; i < 100; ++i) {
        if (truth[i] == Label::spam && pred[i] == Label::spam) ++tp;
        if (truth[i] == Label::spam && pred[i] == Label::ham) ++fn;
        if (truth[i] == Label::ham && pred[i] == Label::spam) ++fp;
        if (truth[i] == Label::ham && pred[i] == Label::ham) ++tn;
    }
    const ConfusionMatrix cm = tally(pred, truth);
    CHECK(cm.tp == tp);
    CHECK(cm.tn == tn);
    CHECK(cm.fp == fp);
    CHECK(cm.fn == fn);
    CHECK(cm.total() == 100);
}

TEST_CASE("tally rejects bad input") {
    CHECK_THROWS_AS(tally(std::vector<Label>{}, std::vector<Label>{}), MetricError);
    CHECK_THROWS_AS(tally(labels({1}), labels({1, 0})), MetricError);
}

TEST_CASE("derive reproduces the published efficiency from its own rates") {
    // Counts built so TP/(TP+FN) and TN/(FP+TN) equal the quoted rates.
    ConfusionMatrix cm;
    cm.tp = 9153;
    cm.fn = 10000 - 9153;
    cm.tn = 3088;
    cm.fp = 10000 - 3088;
    const MetricsReport r = derive(cm);
    CHECK(r.sensitivity == doctest::Approx(0.9153).epsilon(1e-12));
    CHECK(r.specificity == doctest::Approx(0.3088).epsilon(1e-12));
    CHECK(r.efficiency == doctest::Approx(0.61205).epsilon(1e-12));
    CHECK(std::abs(r.efficiency - 0.6121) <= 0.00005 + 1e-12);
}

TEST_CASE("balanced equal counts give 0.5 everywhere") {
    ConfusionMatrix cm;
    cm.tp = cm.tn = cm.fp = cm.fn = 25;
    const MetricsReport r = derive(cm);
    CHECK(r.sensitivity == doctest::Approx(0.5));
    CHECK(r.specificity == doctest::Approx(0.5));
    CHECK(r.efficiency == doctest::Approx(0.5));
    CHECK(r.accuracy == doctest::Approx(0.5));
}

TEST_CASE("accuracy equals efficiency exactly on balanced classes") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t n = 1 + rng.bounded(5000);
        ConfusionMatrix cm;
        cm.tp = rng.bounded(n + 1);
        cm.fn = n - cm.tp;
        cm.tn = rng.bounded(n + 1);
        cm.fp = n - cm.tn;
        const MetricsReport r = derive(cm);
        CHECK(r.accuracy == doctest::Approx(r.efficiency).epsilon(1e-12));
    }
}

TEST_CASE("swapping the positive class swaps the rates and keeps the means") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        ConfusionMatrix cm;
        cm.tp = 1 + rng.bounded(500);
        cm.fn = rng.bounded(500);
        cm.tn = 1 + rng.bounded(500);
        cm.fp = rng.bounded(500);
        ConfusionMatrix swapped;
        swapped.tp = cm.tn;
        swapped.tn = cm.tp;
        swapped.fp = cm.fn;
        swapped.fn = cm.fp;
        const MetricsReport a = derive(cm);
        const MetricsReport b = derive(swapped);
        CHECK(a.sensitivity == doctest::Approx(b.specificity).epsilon(1e-12));
        CHECK(a.specificity == doctest::Approx(b.sensitivity).epsilon(1e-12));
        CHECK(a.efficiency == doctest::Approx(b.efficiency).epsilon(1e-12));
        CHECK(a.accuracy == doctest::Approx(b.accuracy).epsilon(1e-12));

        CHECK(a.sensitivity >= 0.0);
        CHECK(a.sensitivity <= 1.0);
        CHECK(a.specificity >= 0.0);
        CHECK(a.specificity <= 1.0);
        CHECK(a.efficiency == doctest::Approx(0.5 * (a.sensitivity + a.specificity)));
    }
}

TEST_CASE("single-class confusion matrices are undefined") {
    ConfusionMatrix no_positives;
    no_positives.tn = 5;
    no_positives.fp = 1;
    CHECK_THROWS_WITH_AS(derive(no_positives),
                         "metrics undefined: no positive instances (TP+FN = 0)", MetricError);

    ConfusionMatrix no_negatives;
    no_negatives.tp = 5;
    no_negatives.fn = 1;
    CHECK_THROWS_WITH_AS(derive(no_negatives),
                         "metrics undefined: no negative instances (TN+FP = 0)", MetricError);
}

TEST_CASE("table row renders to 4 decimals") {
    ConfusionMatrix cm;
    cm.tp = 9153;
    cm.fn = 847;
    cm.tn = 3087;
    cm.fp = 6913;
    const std::string row = metrics_table_row("CG", derive(cm), 0.149);
    CHECK(row.find("0.9153") != std::string::npos);
    CHECK(row.find("0.3087") != std::string::npos);
    CHECK(row.find("0.6120") != std::string::npos);
    CHECK(row.find("0.149") != std::string::npos);
}
