#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "mtst/rng.hpp"
#include "mtst/unicode.hpp"

using namespace mtst;

namespace {

// u8 literals are char8_t in C++20; the table below narrows them back.
std::string narrow(const char8_t* s) { return std::string(reinterpret_cast<const char*>(s)); }

struct NfcCase {
    const char8_t* input;
    const char8_t* expected;
};

constexpr NfcCase kNfcCases[] = {
#include "nfc_cases.inc"
};

}  // namespace

TEST_CASE("utf8 round-trip over random codepoints") {
    Rng rng(20240);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<uint32_t> cps;
        size_t n = rng.below(40);
        for (size_t i = 0; i < n; ++i) {
            uint32_t cp;
            do {
                cp = static_cast<uint32_t>(rng.below(0x110000));
            } while (cp >= 0xD800 && cp <= 0xDFFF);
            cps.push_back(cp);
        }
        std::string enc = uni::encode_utf8(cps);
        REQUIRE(uni::decode_utf8(enc) == cps);
    }
}

TEST_CASE("utf8 decode drops malformed bytes") {
    // lone continuation, truncated 3-byte lead, overlong, surrogate
    CHECK(uni::decode_utf8("\x80").empty());
    CHECK(uni::decode_utf8("\xE4\xBD").empty());
    CHECK(uni::decode_utf8(std::string("\xC0\xAF")) == std::vector<uint32_t>{});
    CHECK(uni::decode_utf8(std::string("\xED\xA0\x80")) == std::vector<uint32_t>{});
    CHECK(uni::decode_utf8("a\x80z") == std::vector<uint32_t>{'a', 'z'});
}

TEST_CASE("nfc matches reference normalization") {
    for (const auto& c : kNfcCases) {
        CAPTURE(narrow(c.input));
        CHECK(uni::nfc(std::string_view(narrow(c.input))) == narrow(c.expected));
    }
}

TEST_CASE("nfc is idempotent on reference outputs") {
    for (const auto& c : kNfcCases) {
        std::string once = uni::nfc(std::string_view(narrow(c.expected)));
        CHECK(once == narrow(c.expected));
    }
}

TEST_CASE("codepoint predicates") {
    CHECK(uni::is_space(' '));
    CHECK(uni::is_space('\t'));
    CHECK(uni::is_space(0x3000));  // ideographic space
    CHECK_FALSE(uni::is_space('a'));

    CHECK(uni::is_punct('!'));
    CHECK(uni::is_punct(0xFF01));  // fullwidth !
    CHECK(uni::is_punct(0x3002));  // ideographic full stop
    CHECK_FALSE(uni::is_punct('a'));
    CHECK_FALSE(uni::is_punct('0'));

    CHECK(uni::is_emoji(0x1F600));  // grinning face
    CHECK(uni::is_emoji(0x2764));   // heavy black heart
    CHECK_FALSE(uni::is_emoji('!'));
    CHECK_FALSE(uni::is_emoji(0x4F60));  // CJK

    CHECK(uni::is_control(0x07));
    CHECK(uni::is_control(0x7F));
    CHECK_FALSE(uni::is_control('\n'));  // whitespace class wins

    CHECK(uni::is_cjk(0x4F60));
    CHECK_FALSE(uni::is_cjk('a'));
}
