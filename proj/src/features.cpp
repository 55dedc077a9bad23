#include "spamnet/features.hpp"

#include <algorithm>
#include <cctype>

#include <zlib.h>

#include "spamnet/errors.hpp"
#include "spamnet/html_scan.hpp"
#include "spamnet/url_parse.hpp"

namespace spamnet {

namespace {

const char* const kUrlNames[kUrlFeatureCount] = {
    "url_has_ssl",
    "url_length",
    "url_not_subdomain",
    "url_authoritative_tld",
    "url_repeated_alpha",
    "url_deep_subdomain",
    "url_digit_symbol_heavy",
    "url_ip_host",
    "url_top_site",
    "url_domain_length",
};

const char* const kContentNames[kContentFeatureCount] = {
    "content_html_length",
    "content_word_count",
    "content_text_length",
    "content_image_count",
    "content_meta_description_length",
    "content_has_h2",
    "content_has_h1",
    "content_has_video",
    "content_ad_count",
    "content_title_length",
    "content_compression_ratio",
    "content_text_to_html_ratio",
    "content_image_alt_fraction",
    "content_obfuscated_js",
    "content_call_to_action_fraction",
    "content_stopword_fraction",
};

const char* const kLinksNames[kLinksFeatureCount] = {
    "links_internal_count",
    "links_self_fraction",
    "links_external_count",
    "links_anchor_text_fraction",
    "links_anchor_word_count",
};

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool contains_ci(const std::string& haystack_lower, const std::string& needle_lower) {
    return haystack_lower.find(needle_lower) != std::string::npos;
}

} // namespace

std::size_t feature_count(GroupMask groups) {
    std::size_t n = 0;
    if (groups & kGroupUrl) n += kUrlFeatureCount;
    if (groups & kGroupContent) n += kContentFeatureCount;
    if (groups & kGroupLinks) n += kLinksFeatureCount;
    return n;
}

std::vector<std::string> feature_names(GroupMask groups) {
    std::vector<std::string> names;
    names.reserve(feature_count(groups));
    if (groups & kGroupUrl) names.insert(names.end(), std::begin(kUrlNames), std::end(kUrlNames));
    if (groups & kGroupContent) {
        names.insert(names.end(), std::begin(kContentNames), std::end(kContentNames));
    }
    if (groups & kGroupLinks) {
        names.insert(names.end(), std::begin(kLinksNames), std::end(kLinksNames));
    }
    return names;
}

std::string groups_to_string(GroupMask groups) {
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) out += ',';
        out += name;
    };
    if (groups & kGroupUrl) add("url");
    if (groups & kGroupContent) add("content");
    if (groups & kGroupLinks) add("links");
    return out;
}

GroupMask groups_from_string(const std::string& text) {
    GroupMask mask = 0;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (token == "url") mask |= kGroupUrl;
        else if (token == "content") mask |= kGroupContent;
        else if (token == "links") mask |= kGroupLinks;
        else if (token == "all") mask |= kAllGroups;
        else throw ConfigError("unknown feature group: '" + token + "'");
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == '+' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    flush();
    if (mask == 0) throw ConfigError("empty feature group set");
    return mask;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> words;
    std::string cur;
    auto flush = [&] {
        // Trim ASCII punctuation from both ends; keep intra-word marks.
        std::size_t b = 0, e = cur.size();
        auto is_punct = [](unsigned char c) {
            return c < 0x80 && std::ispunct(c) && c != '\'';
        };
        while (b < e && is_punct(static_cast<unsigned char>(cur[b]))) ++b;
        while (e > b && is_punct(static_cast<unsigned char>(cur[e - 1]))) --e;
        if (e > b) words.push_back(cur.substr(b, e - b));
        cur.clear();
    };
    for (char c : text) {
        if (c == ' ') {
            flush();
        } else {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    flush();
    return words;
}

double compression_ratio(std::string_view text) {
    if (text.empty()) return 1.0;
    uLongf bound = compressBound(static_cast<uLong>(text.size()));
    std::vector<unsigned char> out(bound);
    const int rc = compress2(out.data(), &bound, reinterpret_cast<const Bytef*>(text.data()),
                             static_cast<uLong>(text.size()), Z_DEFAULT_COMPRESSION);
    if (rc != Z_OK) return 1.0;
    const double ratio = static_cast<double>(bound) / static_cast<double>(text.size());
    return std::min(1.0, ratio);
}

std::array<double, kUrlFeatureCount> extract_url_features(
    const std::string& url, const std::map<std::string, std::string>& headers,
    const Lexicons& lexicons) {
    const ParsedUrl parsed = parse_url(url);
    std::array<double, kUrlFeatureCount> f{};

    bool ssl = parsed.scheme == "https";
    if (!ssl) {
        if (headers.count("strict-transport-security")) ssl = true;
        auto it = headers.find("x-forwarded-proto");
        if (it != headers.end() && to_lower(it->second) == "https") ssl = true;
    }
    f[0] = ssl ? 1.0 : 0.0;
    f[1] = static_cast<double>(url.size());

    const bool is_ip = parsed.host_is_ip();
    const std::string domain = is_ip ? parsed.host : lexicons.suffixes.registrable_domain(parsed.host);
    const std::size_t beyond = is_ip ? 1 : lexicons.suffixes.labels_beyond_suffix(parsed.host);

    f[2] = beyond <= 2 ? 1.0 : 0.0; // registrable domain or one conventional label (www)

    // Authoritative when any label of the public suffix matches the list
    // (example.gov, example.ac.uk, ...).
    bool authoritative = false;
    if (!is_ip) {
        const std::size_t dot = domain.find('.');
        const std::string suffix = dot == std::string::npos ? domain : domain.substr(dot + 1);
        std::string label;
        for (std::size_t i = 0; i <= suffix.size(); ++i) {
            if (i == suffix.size() || suffix[i] == '.') {
                if (!label.empty() && lexicons.authoritative_tlds.count(label)) {
                    authoritative = true;
                }
                label.clear();
            } else {
                label += suffix[i];
            }
        }
    }
    f[3] = authoritative ? 1.0 : 0.0;

    // Three or more identical consecutive letters anywhere in the host.
    bool repeated = false;
    for (std::size_t i = 0; i + 2 < parsed.host.size(); ++i) {
        const char a = parsed.host[i];
        if (std::isalpha(static_cast<unsigned char>(a)) && parsed.host[i + 1] == a &&
            parsed.host[i + 2] == a) {
            repeated = true;
            break;
        }
    }
    f[4] = repeated ? 1.0 : 0.0;

    // Depth past level 3: two or more labels left of the registrable domain.
    f[5] = (!is_ip && beyond >= 3) ? 1.0 : 0.0;

    std::size_t digits_symbols = 0;
    for (char c : domain) {
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '_') ++digits_symbols;
    }
    f[6] = (!is_ip && digits_symbols >= 3) ? 1.0 : 0.0;

    f[7] = is_ip ? 1.0 : 0.0;
    f[8] = lexicons.top_sites.count(domain) ? 1.0 : 0.0;
    f[9] = static_cast<double>(domain.size());
    return f;
}

namespace {

bool detect_obfuscated_js(const ScannedPage& page) {
    static const char* const patterns[] = {
        "eval(",        "unescape(",     "fromcharcode", "atob(",
        "window.open(", "document.write(unescape",       "popunder",
        "location.replace(",
    };
    for (const std::string& body : page.script_bodies) {
        const std::string lower = to_lower(body);
        for (const char* p : patterns) {
            if (lower.find(p) != std::string::npos) return true;
        }
        // Long runs of hex/percent escapes read as packed payloads.
        std::size_t escapes = 0;
        for (std::size_t i = 0; i + 1 < lower.size(); ++i) {
            if ((lower[i] == '\\' && lower[i + 1] == 'x') ||
                (lower[i] == '%' && i + 2 < lower.size() &&
                 std::isxdigit(static_cast<unsigned char>(lower[i + 1])) &&
                 std::isxdigit(static_cast<unsigned char>(lower[i + 2])))) {
                ++escapes;
            }
        }
        if (escapes >= 20) return true;
    }
    return page.has_meta_refresh;
}

bool is_video_embed(const std::string& src_lower) {
    for (const char* host : {"youtube.com/embed", "youtube-nocookie.com/embed", "youtu.be/",
                             "player.vimeo.com", "dailymotion.com/embed"}) {
        if (src_lower.find(host) != std::string::npos) return true;
    }
    return false;
}

// Counts non-overlapping phrase occurrences in the token stream, longest
// phrase first at each position.
std::size_t count_phrase_hits(const std::vector<std::string>& words,
                              const std::vector<std::vector<std::string>>& phrases) {
    std::size_t hits = 0;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t matched = 0;
        for (const auto& phrase : phrases) {
            if (phrase.empty() || phrase.size() > words.size() - i) continue;
            if (phrase.size() <= matched) continue;
            bool ok = true;
            for (std::size_t k = 0; k < phrase.size(); ++k) {
                if (words[i + k] != phrase[k]) {
                    ok = false;
                    break;
                }
            }
            if (ok) matched = phrase.size();
        }
        if (matched > 0) {
            ++hits;
            i += matched;
        } else {
            ++i;
        }
    }
    return hits;
}

} // namespace

std::array<double, kContentFeatureCount> extract_content_features(std::string_view html,
                                                                  const Lexicons& lexicons) {
    const ScannedPage page = scan_html(html);
    std::array<double, kContentFeatureCount> f{};

    const std::vector<std::string> words = tokenize_words(page.text);

    f[0] = static_cast<double>(page.html_length);
    f[1] = static_cast<double>(words.size());
    f[2] = static_cast<double>(page.text.size());
    f[3] = static_cast<double>(page.image_count);
    f[4] = static_cast<double>(page.meta_description.size());
    f[5] = page.has_h2 ? 1.0 : 0.0;
    f[6] = page.has_h1 ? 1.0 : 0.0;

    bool video = page.has_video_tag;
    for (const std::string& src : page.iframe_srcs) {
        if (video) break;
        video = is_video_embed(to_lower(src));
    }
    f[7] = video ? 1.0 : 0.0;

    std::size_t ads = 0;
    for (const std::string& candidate : page.ad_candidates) {
        for (const std::string& marker : lexicons.ad_markers) {
            if (contains_ci(candidate, marker)) {
                ++ads;
                break;
            }
        }
    }
    f[8] = static_cast<double>(ads);
    f[9] = static_cast<double>(page.title.size());
    f[10] = compression_ratio(page.text);
    f[11] = page.html_length == 0
                ? 0.0
                : std::min(1.0, static_cast<double>(page.text.size()) /
                                    static_cast<double>(page.html_length));
    f[12] = page.image_count == 0 ? 1.0
                                  : static_cast<double>(page.images_with_alt) /
                                        static_cast<double>(page.image_count);
    f[13] = detect_obfuscated_js(page) ? 1.0 : 0.0;

    if (!words.empty()) {
        const std::size_t hits = count_phrase_hits(words, lexicons.call_to_action_tokens);
        f[14] = static_cast<double>(hits) / static_cast<double>(words.size());

        std::size_t stop = 0;
        for (const std::string& w : words) {
            if (lexicons.stopwords.count(w)) ++stop;
        }
        f[15] = static_cast<double>(stop) / static_cast<double>(words.size());
    }
    return f;
}

std::array<double, kLinksFeatureCount> extract_link_features(std::string_view html,
                                                             const std::string& base_url,
                                                             const Lexicons& lexicons) {
    const ParsedUrl base = parse_url(base_url);
    const std::string base_domain =
        base.host_is_ip() ? base.host : lexicons.suffixes.registrable_domain(base.host);
    // Exact self-reference target: the base URL without its fragment.
    std::string self_target = base.scheme + "://" + base.host + (base.path.empty() ? "/" : base.path);
    if (!base.query.empty()) self_target += "?" + base.query;

    const ScannedPage page = scan_html(html);
    std::size_t internal = 0, external = 0, self_links = 0;
    for (const std::string& href : page.anchor_hrefs) {
        const std::string resolved = resolve_href(base, href);
        if (resolved.empty()) continue; // javascript:/mailto:/… are not page links
        ParsedUrl target;
        try {
            target = parse_url(resolved);
        } catch (const UrlParseError&) {
            continue;
        }
        const std::string domain =
            target.host_is_ip() ? target.host : lexicons.suffixes.registrable_domain(target.host);
        if (domain == base_domain) {
            ++internal;
            std::string normalized =
                target.scheme + "://" + target.host + (target.path.empty() ? "/" : target.path);
            if (!target.query.empty()) normalized += "?" + target.query;
            if (normalized == self_target) ++self_links;
        } else {
            ++external;
        }
    }

    std::array<double, kLinksFeatureCount> f{};
    f[0] = static_cast<double>(internal);
    f[1] = internal == 0 ? 0.0 : static_cast<double>(self_links) / static_cast<double>(internal);
    f[2] = static_cast<double>(external);
    f[3] = page.text.empty() ? 0.0
                             : std::min(1.0, static_cast<double>(page.anchor_text.size()) /
                                                 static_cast<double>(page.text.size()));
    f[4] = static_cast<double>(tokenize_words(page.anchor_text).size());
    return f;
}

FeatureVector extract(const PageRecord& record, GroupMask groups, const Lexicons& lexicons) {
    if (groups == 0) throw ConfigError("extract: empty group set");
    FeatureVector out;
    out.groups = groups;
    out.values.reserve(feature_count(groups));
    try {
        if (groups & kGroupUrl) {
            const auto f = extract_url_features(record.url, record.headers, lexicons);
            out.values.insert(out.values.end(), f.begin(), f.end());
        }
        if (groups & kGroupContent) {
            const auto f = extract_content_features(record.html, lexicons);
            out.values.insert(out.values.end(), f.begin(), f.end());
        }
        if (groups & kGroupLinks) {
            const auto f = extract_link_features(record.html, record.url, lexicons);
            out.values.insert(out.values.end(), f.begin(), f.end());
        }
    } catch (const UrlParseError& e) {
        const std::string id = record.source_id.empty() ? record.url : record.source_id;
        throw UrlParseError("record '" + id + "': " + e.what());
    }
    return out;
}

} // namespace spamnet
