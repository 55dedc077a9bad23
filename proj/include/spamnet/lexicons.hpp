#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "spamnet/url_parse.hpp"

namespace spamnet {

// Word/phrase/domain lists backing the extractors, loaded from the
// versioned data files bundled with the repo (one entry per line, UTF-8,
// '#' comments). All entries are lowercase-normalized on load.
//
// top_sites is a static allowlist standing in for a live popularity
// ranking; public_suffixes is a bundled snapshot, not the full list.
struct Lexicons {
    std::unordered_set<std::string> stopwords;
    std::vector<std::string> call_to_action;                      // phrases as written
    std::vector<std::vector<std::string>> call_to_action_tokens;  // same, word-split
    std::unordered_set<std::string> authoritative_tlds;
    std::unordered_set<std::string> top_sites; // registrable domains
    std::vector<std::string> ad_markers;       // substrings of src/id/class
    PublicSuffixList suffixes;

    static Lexicons load(const std::string& data_dir);

    // SPAMNET_DATA_DIR env var, else the source-tree data directory baked
    // in at build time, else ./data.
    static std::string default_data_dir();
    static const Lexicons& bundled();
};

// Shared loader for the lexicon file format.
std::vector<std::string> load_lexicon_file(const std::string& path);

} // namespace spamnet
