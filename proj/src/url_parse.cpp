#include "spamnet/url_parse.hpp"

#include <algorithm>
#include <cctype>

#include "spamnet/errors.hpp"

namespace spamnet {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool valid_scheme(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (unsigned char c : s) {
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return true;
}

bool looks_ipv4(const std::string& host) {
    int labels = 0;
    std::size_t i = 0;
    while (i < host.size()) {
        std::size_t digits = 0;
        long value = 0;
        while (i < host.size() && std::isdigit(static_cast<unsigned char>(host[i]))) {
            value = value * 10 + (host[i] - '0');
            if (value > 255) return false;
            ++digits;
            ++i;
        }
        if (digits == 0 || digits > 3) return false;
        ++labels;
        if (i == host.size()) break;
        if (host[i] != '.') return false;
        ++i;
        if (i == host.size()) return false; // trailing dot already stripped
    }
    return labels == 4;
}

} // namespace

std::vector<std::string> ParsedUrl::host_labels() const {
    std::vector<std::string> labels;
    std::string cur;
    for (char c : host) {
        if (c == '.') {
            labels.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    labels.push_back(cur);
    return labels;
}

ParsedUrl parse_url(const std::string& url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos || scheme_end == 0) {
        throw UrlParseError("not an absolute URL: '" + url + "'");
    }
    ParsedUrl out;
    out.scheme = to_lower(url.substr(0, scheme_end));
    if (!valid_scheme(out.scheme)) throw UrlParseError("bad scheme in '" + url + "'");

    std::size_t pos = scheme_end + 3;
    std::size_t authority_end = url.find_first_of("/?#", pos);
    if (authority_end == std::string::npos) authority_end = url.size();
    std::string authority = url.substr(pos, authority_end - pos);

    // Drop userinfo.
    const std::size_t at = authority.rfind('@');
    if (at != std::string::npos) authority = authority.substr(at + 1);

    if (!authority.empty() && authority[0] == '[') {
        const std::size_t close = authority.find(']');
        if (close == std::string::npos) throw UrlParseError("unterminated IPv6 host in '" + url + "'");
        out.host = to_lower(authority.substr(1, close - 1));
        out.is_ipv6 = true;
        if (close + 1 < authority.size() && authority[close + 1] == ':') {
            out.port = authority.substr(close + 2);
        }
    } else {
        const std::size_t colon = authority.rfind(':');
        if (colon != std::string::npos &&
            authority.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
            out.port = authority.substr(colon + 1);
            authority = authority.substr(0, colon);
        }
        out.host = to_lower(authority);
    }
    while (!out.host.empty() && out.host.back() == '.') out.host.pop_back();
    if (out.host.empty()) throw UrlParseError("empty host in '" + url + "'");
    if (!out.is_ipv6) out.is_ipv4 = looks_ipv4(out.host);

    std::string rest = url.substr(authority_end);
    const std::size_t hash = rest.find('#');
    if (hash != std::string::npos) {
        out.fragment = rest.substr(hash + 1);
        rest = rest.substr(0, hash);
    }
    const std::size_t question = rest.find('?');
    if (question != std::string::npos) {
        out.query = rest.substr(question + 1);
        rest = rest.substr(0, question);
    }
    out.path = rest;
    return out;
}

std::string resolve_href(const ParsedUrl& base, const std::string& raw) {
    // Trim surrounding whitespace.
    std::size_t b = 0, e = raw.size();
    while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string href = raw.substr(b, e - b);
    if (href.empty()) {
        return base.scheme + "://" + base.host + (base.path.empty() ? "/" : base.path);
    }

    const std::string lower = [&] {
        std::string s = href;
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    }();
    for (const char* scheme : {"javascript:", "mailto:", "data:", "tel:", "about:"}) {
        if (lower.rfind(scheme, 0) == 0) return "";
    }

    if (lower.rfind("//", 0) == 0) return base.scheme + ":" + href;
    const std::size_t scheme_end = href.find("://");
    if (scheme_end != std::string::npos && scheme_end > 0 &&
        valid_scheme(lower.substr(0, scheme_end))) {
        return href;
    }

    const std::string origin = base.scheme + "://" + base.host;
    if (href[0] == '/') return origin + href;
    if (href[0] == '#') return origin + (base.path.empty() ? "/" : base.path);
    if (href[0] == '?') return origin + (base.path.empty() ? "/" : base.path) + href;

    // Relative path: replace everything after the last slash of the base path.
    std::string dir = base.path;
    const std::size_t slash = dir.rfind('/');
    dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
    return origin + dir + href;
}

PublicSuffixList::PublicSuffixList(std::unordered_set<std::string> suffixes)
    : suffixes_(std::move(suffixes)) {}

namespace {

std::vector<std::size_t> label_starts_of(const std::string& host) {
    std::vector<std::size_t> starts{0};
    for (std::size_t i = 0; i < host.size(); ++i) {
        if (host[i] == '.') starts.push_back(i + 1);
    }
    return starts;
}

} // namespace

// Index into label_starts of the first label of the public suffix. The
// earliest matching start is the longest suffix; unknown TLDs fall back to
// the last label.
static std::size_t suffix_label_index(const std::unordered_set<std::string>& suffixes,
                                      const std::string& host,
                                      const std::vector<std::size_t>& starts) {
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (suffixes.count(host.substr(starts[i]))) return i;
    }
    return starts.size() - 1;
}

std::string PublicSuffixList::registrable_domain(const std::string& host) const {
    if (host.empty()) return host;
    const auto starts = label_starts_of(host);
    const std::size_t sfx = suffix_label_index(suffixes_, host, starts);
    if (sfx == 0) return host; // host is itself a suffix (or single label)
    return host.substr(starts[sfx - 1]);
}

std::size_t PublicSuffixList::labels_beyond_suffix(const std::string& host) const {
    if (host.empty()) return 0;
    const auto starts = label_starts_of(host);
    return suffix_label_index(suffixes_, host, starts);
}

} // namespace spamnet
