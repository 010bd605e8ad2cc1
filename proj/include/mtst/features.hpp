#pragma once

// Handcrafted lexical features fused with the encoder output: emoji
// frequency, punctuation frequency, capped length, plus one binary
// indicator per sensitive-term group.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mtst/unicode.hpp"

namespace mtst {

struct SensitiveLexicon {
    // Group order is fixed; indicator g corresponds to groups[g].
    std::vector<std::pair<std::string, std::vector<std::string>>> groups;

    size_t num_groups() const { return groups.size(); }

    void check() const {
        std::vector<std::string> names;
        for (const auto& [name, terms] : groups) {
            names.push_back(name);
            for (const auto& t : terms)
                if (t.empty()) throw std::invalid_argument("lexicon group '" + name + "' has an empty term");
        }
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw std::invalid_argument("lexicon group names must be unique");
    }
};

struct FeatureVector {
    std::vector<double> values;  // [emoji_freq, punct_freq, norm_length, indicators...]
};

inline constexpr int kBaseFeatureCount = 3;

inline size_t feature_width(const SensitiveLexicon& lexicon) {
    return kBaseFeatureCount + lexicon.num_groups();
}

namespace feat_detail {

// Case folding for matching: ASCII lowercase. Sensitive-term matching is
// substring-based on NFC text (Chinese has no word boundaries).
inline std::string fold_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace feat_detail

// `text` is expected to be cleaned (NFC). Frequencies are per codepoint and
// defined as 0 for empty text.
inline FeatureVector extract(std::string_view text, const SensitiveLexicon& lexicon, int len_cap = 280) {
    if (len_cap <= 0) throw std::invalid_argument("extract: len_cap must be positive");
    FeatureVector f;
    f.values.assign(feature_width(lexicon), 0.0);

    const std::vector<uint32_t> cps = uni::decode_utf8(text);
    if (!cps.empty()) {
        size_t emoji = 0, punct = 0;
        for (uint32_t cp : cps) {
            if (uni::is_emoji(cp)) ++emoji;
            if (uni::is_punct(cp)) ++punct;
        }
        const double n = static_cast<double>(cps.size());
        f.values[0] = static_cast<double>(emoji) / n;
        f.values[1] = static_cast<double>(punct) / n;
        f.values[2] = std::min(n, static_cast<double>(len_cap)) / static_cast<double>(len_cap);

        const std::string haystack = feat_detail::fold_case(text);
        for (size_t g = 0; g < lexicon.num_groups(); ++g) {
            for (const auto& term : lexicon.groups[g].second) {
                if (haystack.find(feat_detail::fold_case(term)) != std::string::npos) {
                    f.values[kBaseFeatureCount + g] = 1.0;
                    break;
                }
            }
        }
    }
    return f;
}

// Lexicon file format: JSON object {group_name: [terms...]}. Group order is
// the file's key order.
inline SensitiveLexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open lexicon: " + path);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    SensitiveLexicon lex;
    for (auto& [name, terms] : j.items()) {
        std::vector<std::string> list;
        for (const auto& t : terms) list.push_back(t.get<std::string>());
        lex.groups.emplace_back(name, std::move(list));
    }
    lex.check();
    return lex;
}

}  // namespace mtst
