#include "spamnet/model_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

constexpr const char* kMagic = "spamnet-model";

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& tok, std::size_t line_no) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ModelIoError(ModelIoError::Code::malformed,
                           "model line " + std::to_string(line_no) + ": bad number '" + tok + "'");
    }
    return v;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

void save_model(const ModelFile& model, const std::string& path) {
    const Network& net = model.network;
    const std::size_t n_in = net.input_size();
    if (model.feature_names.size() != n_in || model.feature_min.size() != n_in ||
        model.feature_max.size() != n_in) {
        throw ModelIoError(ModelIoError::Code::malformed,
                           "model metadata does not cover every network input");
    }

    std::ostringstream body;
    body << kMagic << ' ' << ModelFile::schema_version << '\n';
    body << "layers";
    for (std::size_t n : net.layer_sizes()) body << ' ' << n;
    body << '\n';
    body << "activation " << to_string(net.activation().kind) << ' '
         << format_double(net.activation().steepness) << '\n';
    body << "groups " << join(model.feature_groups, ',') << '\n';
    body << "normalization " << model.normalization_scheme << '\n';
    for (std::size_t i = 0; i < n_in; ++i) {
        body << "feature " << model.feature_names[i] << ' ' << format_double(model.feature_min[i])
             << ' ' << format_double(model.feature_max[i]) << '\n';
    }
    const std::vector<double> params = net.parameters();
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw ModelIoError(ModelIoError::Code::malformed, "non-finite parameter in model");
        }
    }
    body << "params " << params.size() << '\n';
    for (double p : params) body << format_double(p) << '\n';

    std::string text = body.str();
    char sum[32];
    std::snprintf(sum, sizeof(sum), "%016" PRIx64, fnv1a64(text));
    text += "checksum ";
    text += sum;
    text += '\n';

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelIoError(ModelIoError::Code::io, "cannot open for writing: " + path);
    out << text;
    if (!out) throw ModelIoError(ModelIoError::Code::io, "write failed: " + path);
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelIoError(ModelIoError::Code::io, "cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    // Split the checksum line off and verify the rest byte for byte.
    const std::string needle = "checksum ";
    const std::size_t sum_pos = text.rfind(needle);
    if (sum_pos == std::string::npos) {
        throw ModelIoError(ModelIoError::Code::malformed, "model file has no checksum line");
    }
    const std::string body = text.substr(0, sum_pos);
    std::string sum_line = text.substr(sum_pos + needle.size());
    while (!sum_line.empty() && (sum_line.back() == '\n' || sum_line.back() == '\r')) {
        sum_line.pop_back();
    }
    char expected[32];
    std::snprintf(expected, sizeof(expected), "%016" PRIx64, fnv1a64(body));
    if (sum_line != expected) {
        throw ModelIoError(ModelIoError::Code::checksum_mismatch,
                           "model checksum mismatch: file says '" + sum_line + "'");
    }

    std::istringstream lines(body);
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&](const char* what) -> std::istringstream {
        if (!std::getline(lines, line)) {
            throw ModelIoError(ModelIoError::Code::malformed,
                               std::string("model file truncated, expected ") + what);
        }
        ++line_no;
        return std::istringstream(line);
    };

    {
        auto ls = next_line("header");
        std::string magic;
        int version = -1;
        ls >> magic >> version;
        if (magic != kMagic) {
            throw ModelIoError(ModelIoError::Code::malformed, "not a model file: bad magic");
        }
        if (version != ModelFile::schema_version) {
            throw ModelIoError(ModelIoError::Code::version_mismatch,
                               "unsupported model schema version " + std::to_string(version));
        }
    }

    std::vector<std::size_t> layer_sizes;
    {
        auto ls = next_line("layers");
        std::string tag;
        ls >> tag;
        if (tag != "layers") throw ModelIoError(ModelIoError::Code::malformed, "expected 'layers'");
        std::size_t n;
        while (ls >> n) layer_sizes.push_back(n);
    }

    ActivationSpec activation;
    {
        auto ls = next_line("activation");
        std::string tag, kind, steep;
        ls >> tag >> kind >> steep;
        if (tag != "activation" || kind.empty() || steep.empty()) {
            throw ModelIoError(ModelIoError::Code::malformed, "bad activation line");
        }
        activation.kind = activation_kind_from_string(kind);
        activation.steepness = parse_double(steep, line_no);
    }

    Network net(layer_sizes, activation);
    ModelFile model(std::move(net));

    {
        auto ls = next_line("groups");
        std::string tag, groups;
        ls >> tag >> groups;
        if (tag != "groups") throw ModelIoError(ModelIoError::Code::malformed, "expected 'groups'");
        model.feature_groups = split(groups, ',');
    }
    {
        auto ls = next_line("normalization");
        std::string tag;
        ls >> tag >> model.normalization_scheme;
        if (tag != "normalization") {
            throw ModelIoError(ModelIoError::Code::malformed, "expected 'normalization'");
        }
    }
    for (std::size_t i = 0; i < model.network.input_size(); ++i) {
        auto ls = next_line("feature line");
        std::string tag, name, lo, hi;
        ls >> tag >> name >> lo >> hi;
        if (tag != "feature" || name.empty() || lo.empty() || hi.empty()) {
            throw ModelIoError(ModelIoError::Code::malformed,
                               "bad feature line " + std::to_string(line_no));
        }
        model.feature_names.push_back(name);
        model.feature_min.push_back(parse_double(lo, line_no));
        model.feature_max.push_back(parse_double(hi, line_no));
    }

    std::size_t param_count = 0;
    {
        auto ls = next_line("params");
        std::string tag;
        ls >> tag >> param_count;
        if (tag != "params") throw ModelIoError(ModelIoError::Code::malformed, "expected 'params'");
    }
    if (param_count != model.network.parameter_count()) {
        throw ModelIoError(ModelIoError::Code::malformed,
                           "parameter count does not match topology");
    }
    std::vector<double> params;
    params.reserve(param_count);
    for (std::size_t i = 0; i < param_count; ++i) {
        auto ls = next_line("parameter value");
        std::string tok;
        ls >> tok;
        params.push_back(parse_double(tok, line_no));
    }
    model.network.set_parameters(params);
    return model;
}

} // namespace spamnet
