#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace spamnet {

// Minimal absolute-URL parser, tolerant of everything except a missing
// scheme or empty host. Host is lowercased; a trailing dot is dropped.
struct ParsedUrl {
    std::string scheme;
    std::string host;
    std::string port;
    std::string path;     // includes leading '/', may be empty
    std::string query;    // without '?'
    std::string fragment; // without '#'
    bool is_ipv4 = false;
    bool is_ipv6 = false;

    bool host_is_ip() const { return is_ipv4 || is_ipv6; }
    std::vector<std::string> host_labels() const;
};

ParsedUrl parse_url(const std::string& url); // throws UrlParseError

// Resolves href against a base URL: absolute URLs pass through,
// scheme-relative and path-relative forms are grafted onto the base.
// Returns an empty string for hrefs that cannot name a page
// (javascript:, mailto:, data:).
std::string resolve_href(const ParsedUrl& base, const std::string& href);

// Bundled public-suffix snapshot (a representative subset, not the full
// Mozilla list). Longest-suffix match wins; unknown TLDs fall back to the
// last label.
class PublicSuffixList {
public:
    PublicSuffixList() = default;
    explicit PublicSuffixList(std::unordered_set<std::string> suffixes);

    // "www.example.co.uk" -> "example.co.uk"; an IP or bare suffix maps to
    // itself.
    std::string registrable_domain(const std::string& host) const;

    // Host labels to the left of the public suffix; "example.com" -> 1,
    // "www.example.com" -> 2.
    std::size_t labels_beyond_suffix(const std::string& host) const;

    bool is_suffix(const std::string& s) const { return suffixes_.count(s) > 0; }
    bool empty() const { return suffixes_.empty(); }

private:
    std::unordered_set<std::string> suffixes_;
};

} // namespace spamnet
