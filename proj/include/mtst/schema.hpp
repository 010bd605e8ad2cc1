#pragma once

// Core dataset vocabulary: label schema, samples, splits, text cleaning and
// the row-level validation used by every loader.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtst/unicode.hpp"

namespace mtst {

struct LabelSchema {
    std::vector<std::string> multi_labels;                       // C category names
    std::vector<std::string> main_labels = {"hate", "offensive", "normal"};

    size_t num_multi() const { return multi_labels.size(); }
    size_t num_main() const { return main_labels.size(); }

    int multi_index(std::string_view name) const {
        for (size_t i = 0; i < multi_labels.size(); ++i)
            if (multi_labels[i] == name) return static_cast<int>(i);
        return -1;
    }
    int main_index(std::string_view name) const {
        for (size_t i = 0; i < main_labels.size(); ++i)
            if (main_labels[i] == name) return static_cast<int>(i);
        return -1;
    }

    void check() const {
        if (multi_labels.empty()) throw std::invalid_argument("schema: need at least one multi-label category");
        if (main_labels.size() < 2) throw std::invalid_argument("schema: need at least two main labels");
        auto unique = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) == v.end();
        };
        if (!unique(multi_labels) || !unique(main_labels))
            throw std::invalid_argument("schema: label names must be unique");
    }
};

enum class Provenance { gold, pseudo };

struct Sample {
    std::string id;
    std::string text;
    std::string lang = "und";
    std::optional<std::vector<uint8_t>> multi_label;  // length C, entries in {0,1}
    std::optional<int> main_label;                    // index in [0, K)
    Provenance provenance = Provenance::gold;
};

struct DatasetSplit {
    std::vector<Sample> labeled;
    std::vector<Sample> unlabeled;
    std::vector<Sample> validation;
    std::vector<Sample> test;
};

// --- cleaning ----------------------------------------------------------------

// NFC-normalizes, strips control characters, folds full-width ASCII
// punctuation to half-width, collapses whitespace runs and trims. Returns ""
// when nothing survives; callers drop such samples.
inline std::string clean_text(std::string_view raw) {
    std::vector<uint32_t> cps = uni::nfc(uni::decode_utf8(raw));
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    bool any = false;
    for (uint32_t cp : cps) {
        if (uni::is_control(cp)) continue;
        if (uni::is_space(cp)) {
            pending_space = any;  // leading whitespace never emits
            continue;
        }
        if (cp >= 0xFF01 && cp <= 0xFF5E) {
            uint32_t half = cp - 0xFEE0;
            bool alnum = (half >= '0' && half <= '9') || (half >= 'A' && half <= 'Z') ||
                         (half >= 'a' && half <= 'z');
            if (!alnum) cp = half;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        uni::append_utf8(out, cp);
        any = true;
    }
    return out;
}

// --- main-label mapping --------------------------------------------------------

struct MappingRules {
    // alias -> canonical main label name; canonical names map to themselves.
    std::map<std::string, std::string> aliases = {
        {"hatespeech", "hate"}, {"hateful", "hate"}, {"offence", "offensive"}, {"neither", "normal"},
    };
};

// Majority vote over annotator labels; ties go to the most severe label,
// where severity is the schema's main-label order (earlier = more severe).
inline int map_main_label(const std::vector<std::string>& raw_annotations, const MappingRules& rules,
                          const LabelSchema& schema) {
    if (raw_annotations.empty()) throw std::invalid_argument("map_main_label: no annotations");
    std::vector<int> votes(schema.num_main(), 0);
    for (const auto& raw : raw_annotations) {
        std::string name = raw;
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (auto it = rules.aliases.find(name); it != rules.aliases.end()) name = it->second;
        int idx = schema.main_index(name);
        if (idx < 0) throw std::invalid_argument("map_main_label: unknown label '" + raw + "'");
        ++votes[idx];
    }
    int best = 0;
    for (size_t i = 1; i < votes.size(); ++i)
        if (votes[i] > votes[best]) best = static_cast<int>(i);  // ties keep the lower index
    return best;
}

// --- validation ----------------------------------------------------------------

inline std::vector<std::string> validate(const Sample& s, const LabelSchema& schema) {
    std::vector<std::string> v;
    if (s.text.empty()) v.push_back("empty text");
    if (s.multi_label) {
        if (s.multi_label->size() != schema.num_multi())
            v.push_back("multi_label length");
        else
            for (uint8_t b : *s.multi_label)
                if (b > 1) { v.push_back("multi_label entry not binary"); break; }
    }
    if (s.main_label && (*s.main_label < 0 || *s.main_label >= static_cast<int>(schema.num_main())))
        v.push_back("main_label out of range");
    if (s.provenance == Provenance::pseudo && !s.multi_label && !s.main_label)
        v.push_back("pseudo unlabeled");
    return v;
}

// Pairwise id-disjointness across the four partitions.
inline std::vector<std::string> check_split(const DatasetSplit& split) {
    std::vector<std::string> v;
    std::map<std::string, int> seen;
    auto scan = [&](const std::vector<Sample>& part, const char* name) {
        for (const auto& s : part) {
            auto [it, fresh] = seen.emplace(s.id, 1);
            if (!fresh) v.push_back(std::string("duplicate id across partitions: ") + s.id + " in " + name);
        }
    };
    scan(split.labeled, "labeled");
    scan(split.unlabeled, "unlabeled");
    scan(split.validation, "validation");
    scan(split.test, "test");
    for (const auto& s : split.unlabeled)
        if ((s.multi_label || s.main_label))
            v.push_back("unlabeled sample carries labels: " + s.id);
    return v;
}

}  // namespace mtst
