#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace spamnet {

// Everything the feature extractors need from one pass over raw HTML
// bytes. The scanner is a lenient state machine: it never throws on any
// input, copes with unterminated tags/comments/quotes, and treats bytes
// it cannot make sense of as text.
struct ScannedPage {
    std::size_t html_length = 0;

    // Visible text: tag-stripped, script/style/comment-free, common
    // entities decoded, whitespace runs collapsed to single spaces,
    // trimmed. Tag boundaries separate words. Head text (title etc.)
    // is included.
    std::string text;

    std::string title;            // first <title> content, collapsed
    std::string meta_description; // first <meta name="description"> content

    bool has_h1 = false;
    bool has_h2 = false;
    bool has_video_tag = false;
    bool has_meta_refresh = false;

    std::size_t image_count = 0;
    std::size_t images_with_alt = 0;

    std::vector<std::string> anchor_hrefs; // raw href attributes of <a>
    std::string anchor_text;               // text inside <a>, collapsed

    std::vector<std::string> script_bodies; // raw inline script text
    std::vector<std::string> iframe_srcs;   // raw src of <iframe>/<embed>

    // Concatenated "src id class" of iframe/script/div/ins/section/aside
    // nodes, one entry per node, lowercased; matched against ad markers.
    std::vector<std::string> ad_candidates;
};

ScannedPage scan_html(std::string_view html);

} // namespace spamnet
