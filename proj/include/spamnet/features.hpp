#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spamnet/lexicons.hpp"
#include "spamnet/metrics.hpp"

namespace spamnet {

// Feature groups and their fixed cardinalities: url 10, content 16,
// links 5. The canonical 31-feature order (url, content, links) is a
// versioned contract shared by the CSV corpus format and model files.
enum GroupBit : unsigned { kGroupUrl = 1u, kGroupContent = 2u, kGroupLinks = 4u };
using GroupMask = unsigned;
inline constexpr GroupMask kAllGroups = kGroupUrl | kGroupContent | kGroupLinks;

inline constexpr std::size_t kUrlFeatureCount = 10;
inline constexpr std::size_t kContentFeatureCount = 16;
inline constexpr std::size_t kLinksFeatureCount = 5;

std::size_t feature_count(GroupMask groups);
std::vector<std::string> feature_names(GroupMask groups);
std::string groups_to_string(GroupMask groups);         // "url,content,links"
GroupMask groups_from_string(const std::string& text);  // throws on unknown name

struct FeatureVector {
    GroupMask groups = 0;
    std::vector<double> values; // feature_count(groups) entries, canonical order
};

// A stored page: URL string plus raw HTML bytes, optionally response
// headers (lowercase keys) and a label.
struct PageRecord {
    std::string url;
    std::string html;
    std::map<std::string, std::string> headers;
    std::optional<Label> label;
    std::string source_id;
};

// URL group, in order: has_ssl, url_length, not_subdomain,
// authoritative_tld, repeated_alpha, deep_subdomain, digit_symbol_heavy,
// ip_host, top_site, domain_length. Throws UrlParseError.
std::array<double, kUrlFeatureCount> extract_url_features(
    const std::string& url, const std::map<std::string, std::string>& headers,
    const Lexicons& lexicons);

// Content group, in order: html_length, word_count, text_length,
// image_count, meta_description_length, has_h2, has_h1, has_video,
// ad_count, title_length, compression_ratio, text_to_html_ratio,
// image_alt_fraction, obfuscated_js, call_to_action_fraction,
// stopword_fraction. Never throws on page content.
std::array<double, kContentFeatureCount> extract_content_features(std::string_view html,
                                                                  const Lexicons& lexicons);

// Links group, in order: internal_count, self_fraction, external_count,
// anchor_text_fraction, anchor_word_count. Throws UrlParseError only for
// a bad base URL.
std::array<double, kLinksFeatureCount> extract_link_features(std::string_view html,
                                                             const std::string& base_url,
                                                             const Lexicons& lexicons);

// Populates the requested groups for one record. Errors carry the
// record's source id.
FeatureVector extract(const PageRecord& record, GroupMask groups, const Lexicons& lexicons);

// Lowercased, punctuation-trimmed word tokens of collapsed text.
std::vector<std::string> tokenize_words(std::string_view text);

// zlib-deflated size over input size, clamped to [0,1]; 1.0 for empty
// input. Pinned to zlib default compression level.
double compression_ratio(std::string_view text);

} // namespace spamnet
