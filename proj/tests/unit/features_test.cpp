#include <catch2/catch_amalgamated.hpp>

#include "mtst/features.hpp"
#include "test_util.hpp"

using namespace mtst;
using Catch::Matchers::WithinAbs;
using mtst_test::TempDir;

namespace {
SensitiveLexicon insults_lexicon() {
    SensitiveLexicon lex;
    lex.groups.emplace_back("insults", std::vector<std::string>{"idiot", "笨蛋"});
    return lex;
}
}  // namespace

TEST_CASE("extract counts emoji, punctuation and capped length") {
    SensitiveLexicon empty;
    auto f = extract("Hello!!!", empty, 100);
    REQUIRE(f.values.size() == 3);
    CHECK_THAT(f.values[0], WithinAbs(0.0, 1e-15));          // no emoji
    CHECK_THAT(f.values[1], WithinAbs(3.0 / 8.0, 1e-15));    // 3 of 8 codepoints
    CHECK_THAT(f.values[2], WithinAbs(8.0 / 100.0, 1e-15));  // normalized length

    auto g = extract("hi 😀😀", empty, 280);
    CHECK_THAT(g.values[0], WithinAbs(2.0 / 5.0, 1e-15));

    // length saturates at the cap
    auto h = extract(std::string(500, 'x'), empty, 280);
    CHECK_THAT(h.values[2], WithinAbs(1.0, 1e-15));
}

TEST_CASE("empty text maps to all zeros") {
    auto lex = insults_lexicon();
    auto f = extract("", lex, 280);
    REQUIRE(f.values.size() == 4);
    for (double v : f.values) CHECK(v == 0.0);
}

TEST_CASE("group indicators fire on case-insensitive substrings") {
    auto lex = insults_lexicon();
    CHECK(extract("you idiot", lex).values[3] == 1.0);
    CHECK(extract("you IDIOT!", lex).values[3] == 1.0);
    CHECK(extract("你这个笨蛋", lex).values[3] == 1.0);  // no word boundaries in Chinese
    CHECK(extract("you genius", lex).values[3] == 0.0);
    CHECK(extract("idiotic", lex).values[3] == 1.0);  // substring semantics
}

TEST_CASE("term order within a group never changes output") {
    SensitiveLexicon a, b;
    a.groups.emplace_back("g", std::vector<std::string>{"foo", "bar", "baz"});
    b.groups.emplace_back("g", std::vector<std::string>{"baz", "foo", "bar"});
    for (const char* text : {"no hit", "a bar b", "baz foo", ""}) {
        CHECK(extract(text, a).values == extract(text, b).values);
    }
}

TEST_CASE("appending a matched term never lowers the indicator") {
    auto lex = insults_lexicon();
    std::vector<std::string> texts{"hello", "you idiot", "全是笨蛋"};
    for (const auto& t : texts) {
        double before = extract(t, lex).values[3];
        double after = extract(t + " idiot", lex).values[3];
        CHECK(after >= before);
        CHECK(after == 1.0);
    }
}

TEST_CASE("feature vector entries stay in range") {
    auto lex = insults_lexicon();
    for (const char* text : {"", "a", "!!!", "😀", "mixed 笨蛋 text!!! 😀😀", "你好！"}) {
        auto f = extract(text, lex);
        for (double v : f.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("lexicon file round-trip and validation") {
    TempDir tmp;
    auto path = tmp.write("lex.json", R"({"insults": ["idiot"], "threats": ["kill you"]})");
    auto lex = load_lexicon(path.string());
    REQUIRE(lex.num_groups() == 2);
    CHECK(lex.groups[0].first == "insults");
    CHECK(lex.groups[1].first == "threats");
    CHECK(feature_width(lex) == 5);

    auto bad = tmp.write("bad.json", R"({"a": ["x"], "a": ["y"]})");
    // duplicate keys collapse in JSON; empty term is the real failure mode
    auto bad2 = tmp.write("bad2.json", R"({"a": [""]})");
    CHECK_THROWS_AS(load_lexicon(bad2.string()), std::invalid_argument);
    (void)bad;
}
