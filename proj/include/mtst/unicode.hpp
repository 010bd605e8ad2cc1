#pragma once

// UTF-8 decoding/encoding, canonical normalization (NFC) and the small set
// of codepoint predicates used by text cleaning and feature extraction.
// Table data lives in unicode_tables.hpp (generated); Hangul syllables are
// decomposed/composed algorithmically.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mtst/unicode_tables.hpp"

namespace mtst::uni {

inline constexpr uint32_t kReplacement = 0xFFFD;

// --- UTF-8 -----------------------------------------------------------------

// Decodes UTF-8, silently dropping malformed bytes (overlong encodings,
// surrogates, truncated sequences). A byte that starts an invalid sequence
// consumes only itself.
inline std::vector<uint32_t> decode_utf8(std::string_view s) {
    std::vector<uint32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    const auto* b = reinterpret_cast<const unsigned char*>(s.data());
    while (i < s.size()) {
        unsigned char c = b[i];
        if (c < 0x80) {
            out.push_back(c);
            ++i;
            continue;
        }
        int len = 0;
        uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; }
        else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; }
        else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; }
        else { ++i; continue; }
        if (i + len > s.size()) { ++i; continue; }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            unsigned char cc = b[i + k];
            if ((cc & 0xC0) != 0x80) { ok = false; break; }
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (!ok) { ++i; continue; }
        static constexpr uint32_t min_cp[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < min_cp[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

inline void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode_utf8(const std::vector<uint32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (uint32_t cp : cps) append_utf8(out, cp);
    return out;
}

// --- codepoint predicates ----------------------------------------------------

namespace detail {
template <size_t N>
inline bool in_ranges(const CpRange (&table)[N], uint32_t cp) {
    auto it = std::upper_bound(std::begin(table), std::end(table), cp,
                               [](uint32_t v, const CpRange& r) { return v < r.lo; });
    return it != std::begin(table) && cp <= std::prev(it)->hi;
}
}  // namespace detail

inline bool is_space(uint32_t cp) { return detail::in_ranges(kSpace, cp); }
inline bool is_punct(uint32_t cp) { return detail::in_ranges(kPunct, cp); }
inline bool is_emoji(uint32_t cp) { return detail::in_ranges(kEmoji, cp); }

// Cc category minus the codepoints is_space already covers ('\t', '\n', ...).
inline bool is_control(uint32_t cp) {
    return (cp < 0x20 || (cp >= 0x7F && cp <= 0x9F)) && !is_space(cp);
}

inline bool is_cjk(uint32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) ||
           (cp >= 0xF900 && cp <= 0xFAFF) || (cp >= 0x20000 && cp <= 0x2FA1F);
}

// --- NFC ---------------------------------------------------------------------

namespace detail {

constexpr uint32_t kHangulSBase = 0xAC00, kHangulLBase = 0x1100, kHangulVBase = 0x1161,
                   kHangulTBase = 0x11A7;
constexpr uint32_t kHangulLCount = 19, kHangulVCount = 21, kHangulTCount = 28;
constexpr uint32_t kHangulNCount = kHangulVCount * kHangulTCount;
constexpr uint32_t kHangulSCount = kHangulLCount * kHangulNCount;

inline uint8_t ccc(uint32_t cp) {
    auto it = std::lower_bound(std::begin(kCcc), std::end(kCcc), cp,
                               [](const CccEntry& e, uint32_t v) { return e.cp < v; });
    return (it != std::end(kCcc) && it->cp == cp) ? it->ccc : 0;
}

inline void decompose_cp(uint32_t cp, std::vector<uint32_t>& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        uint32_t s = cp - kHangulSBase;
        out.push_back(kHangulLBase + s / kHangulNCount);
        out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
        if (s % kHangulTCount) out.push_back(kHangulTBase + s % kHangulTCount);
        return;
    }
    auto it = std::lower_bound(std::begin(kDecomp), std::end(kDecomp), cp,
                               [](const DecompEntry& e, uint32_t v) { return e.cp < v; });
    if (it != std::end(kDecomp) && it->cp == cp) {
        for (uint32_t k = 0; k < it->len; ++k) out.push_back(kDecompPool[it->offset + k]);
    } else {
        out.push_back(cp);
    }
}

inline uint32_t compose_pair(uint32_t a, uint32_t b) {
    // Hangul LV / LVT.
    if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
        b < kHangulVBase + kHangulVCount) {
        return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
    }
    if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount && (a - kHangulSBase) % kHangulTCount == 0 &&
        b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
        return a + (b - kHangulTBase);
    }
    uint64_t key = (static_cast<uint64_t>(a) << 21) | b;
    auto it = std::lower_bound(std::begin(kComp), std::end(kComp), key,
                               [](const CompEntry& e, uint64_t v) { return e.key < v; });
    return (it != std::end(kComp) && it->key == key) ? it->composed : 0;
}

}  // namespace detail

inline std::vector<uint32_t> nfc(const std::vector<uint32_t>& in) {
    bool ascii = true;
    for (uint32_t cp : in)
        if (cp >= 0x80) { ascii = false; break; }
    if (ascii) return in;

    // 1. Full canonical decomposition.
    std::vector<uint32_t> d;
    d.reserve(in.size() + 8);
    for (uint32_t cp : in) detail::decompose_cp(cp, d);

    // 2. Canonical ordering: stable sort of each nonzero-ccc run.
    for (size_t i = 1; i < d.size(); ++i) {
        uint8_t c = detail::ccc(d[i]);
        if (c == 0) continue;
        size_t j = i;
        while (j > 0) {
            uint8_t prev = detail::ccc(d[j - 1]);
            if (prev == 0 || prev <= c) break;
            std::swap(d[j - 1], d[j]);
            --j;
        }
    }

    // 3. Canonical composition.
    std::vector<uint32_t> out;
    out.reserve(d.size());
    ptrdiff_t starter = -1;
    for (uint32_t cp : d) {
        uint8_t c = detail::ccc(cp);
        if (starter >= 0) {
            bool blocked = false;
            if (static_cast<size_t>(starter) != out.size() - 1) {
                blocked = detail::ccc(out.back()) >= c;
            }
            if (!blocked) {
                if (uint32_t m = detail::compose_pair(out[starter], cp)) {
                    out[starter] = m;
                    continue;
                }
            }
        }
        out.push_back(cp);
        if (c == 0) starter = static_cast<ptrdiff_t>(out.size()) - 1;
    }
    return out;
}

inline std::string nfc(std::string_view s) { return encode_utf8(nfc(decode_utf8(s))); }

inline size_t codepoint_count(std::string_view s) { return decode_utf8(s).size(); }

}  // namespace mtst::uni
