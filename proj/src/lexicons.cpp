#include "spamnet/lexicons.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "spamnet/errors.hpp"

namespace spamnet {

std::vector<std::string> load_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon file: " + path);
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.pop_back();
        }
        std::size_t b = 0;
        while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        line = line.substr(b);
        if (line.empty()) continue;
        std::transform(line.begin(), line.end(), line.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        entries.push_back(line);
    }
    if (entries.empty()) throw Error("lexicon file is empty: " + path);
    return entries;
}

Lexicons Lexicons::load(const std::string& data_dir) {
    namespace fs = std::filesystem;
    auto file = [&](const char* name) { return (fs::path(data_dir) / name).string(); };

    Lexicons lex;
    for (auto& w : load_lexicon_file(file("stopwords.txt"))) lex.stopwords.insert(std::move(w));
    lex.call_to_action = load_lexicon_file(file("call_to_action.txt"));
    for (const std::string& phrase : lex.call_to_action) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : phrase) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) parts.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) parts.push_back(std::move(cur));
        if (!parts.empty()) lex.call_to_action_tokens.push_back(std::move(parts));
    }
    for (auto& t : load_lexicon_file(file("authoritative_tlds.txt"))) {
        lex.authoritative_tlds.insert(std::move(t));
    }
    for (auto& d : load_lexicon_file(file("top_sites.txt"))) lex.top_sites.insert(std::move(d));
    lex.ad_markers = load_lexicon_file(file("ad_markers.txt"));
    std::unordered_set<std::string> suffixes;
    for (auto& s : load_lexicon_file(file("public_suffixes.txt"))) suffixes.insert(std::move(s));
    lex.suffixes = PublicSuffixList(std::move(suffixes));
    return lex;
}

std::string Lexicons::default_data_dir() {
    if (const char* env = std::getenv("SPAMNET_DATA_DIR"); env && *env) return env;
#ifdef SPAMNET_SOURCE_DATA_DIR
    if (std::filesystem::exists(SPAMNET_SOURCE_DATA_DIR)) return SPAMNET_SOURCE_DATA_DIR;
#endif
    return "data";
}

const Lexicons& Lexicons::bundled() {
    static const Lexicons instance = Lexicons::load(default_data_dir());
    return instance;
}

} // namespace spamnet
