#include "spamnet/html_scan.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace spamnet {

namespace {

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out += ascii_lower(c);
    return out;
}

bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Accumulates decoded text with whitespace runs collapsed to one space.
class TextCollector {
public:
    void put(char c) {
        if (is_space_byte(c)) {
            pending_space_ = !buffer_.empty();
        } else {
            if (pending_space_) buffer_ += ' ';
            pending_space_ = false;
            buffer_ += c;
        }
    }
    void boundary() { pending_space_ = !buffer_.empty(); }
    std::string take() { return std::move(buffer_); }

private:
    std::string buffer_;
    bool pending_space_ = false;
};

struct Attr {
    std::string name; // lowercase
    std::string value;
};

// Decodes the entity starting at html[pos] (which is '&'). Always yields
// exactly one replacement character; unknown or unterminated entities
// yield the literal '&' and advance one byte.
struct EntityDecode {
    std::size_t next;
    char ch;
};

EntityDecode decode_entity(std::string_view html, std::size_t pos) {
    const std::size_t end = std::min(html.size(), pos + 12);
    std::size_t semi = std::string_view::npos;
    for (std::size_t i = pos + 1; i < end; ++i) {
        if (html[i] == ';') {
            semi = i;
            break;
        }
    }
    if (semi == std::string_view::npos) return {pos + 1, '&'};
    const std::string_view body = html.substr(pos + 1, semi - pos - 1);
    auto emit = [&](char c) { return EntityDecode{semi + 1, c}; };
    if (body == "amp") return emit('&');
    if (body == "lt") return emit('<');
    if (body == "gt") return emit('>');
    if (body == "quot") return emit('"');
    if (body == "apos" || body == "#39") return emit('\'');
    if (body == "nbsp") return emit(' ');
    if (body.size() >= 2 && body[0] == '#') {
        long code = 0;
        bool ok = false;
        if (body[1] == 'x' || body[1] == 'X') {
            for (std::size_t i = 2; i < body.size(); ++i) {
                const char c = ascii_lower(body[i]);
                if (c >= '0' && c <= '9') code = code * 16 + (c - '0');
                else if (c >= 'a' && c <= 'f') code = code * 16 + (c - 'a' + 10);
                else return emit('?');
                ok = true;
                if (code > 0x10ffff) return emit('?');
            }
        } else {
            for (std::size_t i = 1; i < body.size(); ++i) {
                if (body[i] < '0' || body[i] > '9') return emit('?');
                code = code * 10 + (body[i] - '0');
                ok = true;
                if (code > 0x10ffff) return emit('?');
            }
        }
        if (!ok) return emit('?');
        if (code == 160) return emit(' ');
        if (code >= 32 && code < 127) return emit(static_cast<char>(code));
        return emit('?');
    }
    return {pos + 1, '&'};
}

// Case-insensitive search for `needle` (already lowercase) in html from
// `from`; npos when absent.
std::size_t ifind(std::string_view html, std::size_t from, std::string_view needle) {
    if (needle.empty() || html.size() < needle.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= html.size(); ++i) {
        std::size_t j = 0;
        while (j < needle.size() && ascii_lower(html[i + j]) == needle[j]) ++j;
        if (j == needle.size()) return i;
    }
    return std::string_view::npos;
}

// Parses attributes from html[pos..] until '>'; returns index past '>'
// (or html.size()). Sets self_closing when the tag ends in '/>'.
std::size_t parse_attributes(std::string_view html, std::size_t pos, std::vector<Attr>& attrs,
                             bool& self_closing) {
    self_closing = false;
    while (pos < html.size()) {
        while (pos < html.size() && (is_space_byte(html[pos]) || html[pos] == '/')) {
            if (html[pos] == '/' && pos + 1 < html.size() && html[pos + 1] == '>') {
                self_closing = true;
            }
            ++pos;
        }
        if (pos >= html.size()) return pos;
        if (html[pos] == '>') return pos + 1;

        Attr attr;
        while (pos < html.size() && html[pos] != '=' && html[pos] != '>' &&
               !is_space_byte(html[pos])) {
            attr.name += ascii_lower(html[pos]);
            ++pos;
        }
        while (pos < html.size() && is_space_byte(html[pos])) ++pos;
        if (pos < html.size() && html[pos] == '=') {
            ++pos;
            while (pos < html.size() && is_space_byte(html[pos])) ++pos;
            if (pos < html.size() && (html[pos] == '"' || html[pos] == '\'')) {
                const char quote = html[pos++];
                while (pos < html.size() && html[pos] != quote) attr.value += html[pos++];
                if (pos < html.size()) ++pos; // closing quote
            } else {
                while (pos < html.size() && !is_space_byte(html[pos]) && html[pos] != '>') {
                    attr.value += html[pos++];
                }
            }
        }
        if (!attr.name.empty()) attrs.push_back(std::move(attr));
    }
    return pos;
}

const std::string* find_attr(const std::vector<Attr>& attrs, std::string_view name) {
    for (const Attr& a : attrs) {
        if (a.name == name) return &a.value;
    }
    return nullptr;
}

std::string collapse(std::string_view raw) {
    TextCollector c;
    for (char ch : raw) c.put(ch);
    return c.take();
}

} // namespace

ScannedPage scan_html(std::string_view html) {
    ScannedPage page;
    page.html_length = html.size();

    TextCollector text;
    TextCollector anchors;
    std::size_t anchor_depth = 0;
    std::string title_raw;
    bool in_title = false;
    bool seen_title = false;

    std::size_t pos = 0;
    while (pos < html.size()) {
        const char c = html[pos];
        if (c != '<') {
            char decoded = c;
            if (c == '&') {
                const EntityDecode d = decode_entity(html, pos);
                decoded = d.ch;
                pos = d.next;
            } else {
                ++pos;
            }
            text.put(decoded);
            if (anchor_depth > 0) anchors.put(decoded);
            if (in_title) title_raw += decoded;
            continue;
        }

        // '<' — comment, declaration, closing tag, or element.
        if (html.compare(pos, 4, "<!--") == 0) {
            const std::size_t end = html.find("-->", pos + 4);
            pos = end == std::string_view::npos ? html.size() : end + 3;
            text.boundary();
            continue;
        }
        if (pos + 1 < html.size() && (html[pos + 1] == '!' || html[pos + 1] == '?')) {
            const std::size_t end = html.find('>', pos + 1);
            pos = end == std::string_view::npos ? html.size() : end + 1;
            text.boundary();
            continue;
        }
        if (pos + 1 < html.size() && html[pos + 1] == '/') {
            std::size_t name_end = pos + 2;
            std::string name;
            while (name_end < html.size() && !is_space_byte(html[name_end]) &&
                   html[name_end] != '>') {
                name += ascii_lower(html[name_end]);
                ++name_end;
            }
            const std::size_t end = html.find('>', name_end);
            pos = end == std::string_view::npos ? html.size() : end + 1;
            if (name == "a" && anchor_depth > 0) --anchor_depth;
            if (name == "title") in_title = false;
            text.boundary();
            if (anchor_depth > 0) anchors.boundary();
            continue;
        }

        // Opening tag. A '<' not followed by a letter is treated as text.
        std::size_t name_end = pos + 1;
        std::string name;
        while (name_end < html.size() &&
               (std::isalnum(static_cast<unsigned char>(html[name_end])) ||
                html[name_end] == '-')) {
            name += ascii_lower(html[name_end]);
            ++name_end;
        }
        if (name.empty()) {
            text.put('<');
            if (anchor_depth > 0) anchors.put('<');
            ++pos;
            continue;
        }

        std::vector<Attr> attrs;
        bool self_closing = false;
        pos = parse_attributes(html, name_end, attrs, self_closing);
        text.boundary();
        if (anchor_depth > 0) anchors.boundary();

        if (name == "script" || name == "style") {
            // Raw content until the matching close tag.
            const std::string close = "</" + name;
            const std::size_t body_end = ifind(html, pos, close);
            const std::size_t stop = body_end == std::string_view::npos ? html.size() : body_end;
            if (name == "script" && !self_closing) {
                page.script_bodies.emplace_back(html.substr(pos, stop - pos));
            }
            if (name == "script") {
                const std::string* src = find_attr(attrs, "src");
                const std::string* id = find_attr(attrs, "id");
                const std::string* cls = find_attr(attrs, "class");
                page.ad_candidates.push_back(to_lower((src ? *src : "") + " " + (id ? *id : "") +
                                                      " " + (cls ? *cls : "")));
            }
            if (body_end == std::string_view::npos) {
                pos = html.size();
            } else {
                const std::size_t gt = html.find('>', body_end);
                pos = gt == std::string_view::npos ? html.size() : gt + 1;
            }
            continue;
        }

        if (name == "title" && !seen_title) {
            in_title = true;
            seen_title = true;
        } else if (name == "h1") {
            page.has_h1 = true;
        } else if (name == "h2") {
            page.has_h2 = true;
        } else if (name == "video") {
            page.has_video_tag = true;
        } else if (name == "img") {
            ++page.image_count;
            const std::string* alt = find_attr(attrs, "alt");
            if (alt && !collapse(*alt).empty()) ++page.images_with_alt;
        } else if (name == "a") {
            ++anchor_depth;
            if (const std::string* href = find_attr(attrs, "href")) {
                page.anchor_hrefs.push_back(*href);
            }
        } else if (name == "meta") {
            const std::string* metaname = find_attr(attrs, "name");
            const std::string* content = find_attr(attrs, "content");
            if (metaname && to_lower(*metaname) == "description" && content &&
                page.meta_description.empty()) {
                page.meta_description = collapse(*content);
            }
            const std::string* equiv = find_attr(attrs, "http-equiv");
            if (equiv && to_lower(*equiv) == "refresh") page.has_meta_refresh = true;
        } else if (name == "iframe" || name == "embed") {
            if (const std::string* src = find_attr(attrs, "src")) {
                page.iframe_srcs.push_back(*src);
            }
        }

        if (name == "iframe" || name == "div" || name == "ins" || name == "section" ||
            name == "aside") {
            const std::string* src = find_attr(attrs, "src");
            const std::string* id = find_attr(attrs, "id");
            const std::string* cls = find_attr(attrs, "class");
            if (src || id || cls) {
                page.ad_candidates.push_back(to_lower((src ? *src : "") + " " + (id ? *id : "") +
                                                      " " + (cls ? *cls : "")));
            }
        }
    }

    page.text = text.take();
    page.anchor_text = anchors.take();
    page.title = collapse(title_raw);
    return page;
}

} // namespace spamnet
