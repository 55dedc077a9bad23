#include <fstream>
#include <sstream>

#include <doctest.h>

#include "helpers.hpp"
#include "spamnet/errors.hpp"
#include "spamnet/model_io.hpp"

using namespace spamnet;
using spamnet::test::temp_path;

namespace {

ModelFile sample_model(std::uint64_t seed = 7) {
    ModelFile model(Network::initialize({4, 3, 1}, ActivationSpec::bipolar(), seed));
    model.feature_groups = {"url"};
    model.feature_names = {"a", "b", "c", "d"};
    model.normalization_scheme = "minmax";
    model.feature_min = {0.0, -1.5, 2.0, 0.25};
    model.feature_max = {1.0, 3.5, 2.0, 0.75};
    return model;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("model round trip is exact") {
    const ModelFile model = sample_model();
    const std::string path = temp_path("model.nn");
    save_model(model, path);
    const ModelFile loaded = load_model(path);
    CHECK(loaded.network == model.network);
    CHECK(loaded.feature_groups == model.feature_groups);
    CHECK(loaded.feature_names == model.feature_names);
    CHECK(loaded.feature_min == model.feature_min);
    CHECK(loaded.feature_max == model.feature_max);
    CHECK(loaded.normalization_scheme == "minmax");

    // Same-seed save produces identical bytes.
    const std::string path2 = temp_path("model2.nn");
    save_model(sample_model(), path2);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("truncated model file is malformed") {
    const std::string path = temp_path("model.nn");
    save_model(sample_model(), path);
    const std::string text = slurp(path);
    spit(path, text.substr(0, text.size() / 2));
    try {
        load_model(path);
        FAIL("expected ModelIoError");
    } catch (const ModelIoError& e) {
        const bool expected = e.code() == ModelIoError::Code::malformed ||
                              e.code() == ModelIoError::Code::checksum_mismatch;
        CHECK(expected);
    }
}

TEST_CASE("future schema version is a version error") {
    const std::string path = temp_path("model.nn");
    save_model(sample_model(), path);
    std::string text = slurp(path);
    const std::string tag = "spamnet-model 1";
    text.replace(text.find(tag), tag.size(), "spamnet-model 2");
    // Keep the checksum valid for the edited body so the version check is
    // what trips.
    const std::string no_sum = text.substr(0, text.rfind("checksum "));
    spit(path, no_sum);
    // Recompute by saving through the normal writer path: append the right
    // checksum by hand.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : no_sum) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char sum[32];
    std::snprintf(sum, sizeof(sum), "%016llx", static_cast<unsigned long long>(h));
    spit(path, no_sum + "checksum " + sum + "\n");

    try {
        load_model(path);
        FAIL("expected ModelIoError");
    } catch (const ModelIoError& e) {
        CHECK(e.code() == ModelIoError::Code::version_mismatch);
    }
}

TEST_CASE("corrupted payload fails the checksum") {
    const std::string path = temp_path("model.nn");
    save_model(sample_model(), path);
    std::string text = slurp(path);
    const std::size_t pos = text.find("params");
    text[pos + 10] = text[pos + 10] == '1' ? '2' : '1';
    spit(path, text);
    try {
        load_model(path);
        FAIL("expected ModelIoError");
    } catch (const ModelIoError& e) {
        CHECK(e.code() == ModelIoError::Code::checksum_mismatch);
    }
}

TEST_CASE("missing file is an io error") {
    try {
        load_model(temp_path("does-not-exist.nn"));
        FAIL("expected ModelIoError");
    } catch (const ModelIoError& e) {
        CHECK(e.code() == ModelIoError::Code::io);
    }
}
