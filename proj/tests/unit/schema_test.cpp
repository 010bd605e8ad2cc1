#include <catch2/catch_amalgamated.hpp>

#include "mtst/schema.hpp"

using namespace mtst;

namespace {
LabelSchema test_schema() {
    LabelSchema s;
    s.multi_labels = {"race", "religion", "gender"};
    return s;
}
}  // namespace

TEST_CASE("clean_text collapses whitespace and trims") {
    CHECK(clean_text("  hello\t\tworld ") == "hello world");
    CHECK(clean_text("a\nb") == "a b");
    CHECK(clean_text("") == "");
    CHECK(clean_text(" \t\r\n ") == "");
}

TEST_CASE("clean_text folds full-width punctuation, keeps full-width alnum") {
    CHECK(clean_text("你好！") == "你好!");
    CHECK(clean_text("（ok）") == "(ok)");
    // full-width digits/letters are not punctuation and stay untouched
    CHECK(clean_text("５") == "５");
    CHECK(clean_text("Ａ") == "Ａ");
    // ideographic space is whitespace
    CHECK(clean_text("你　好") == "你 好");
}

TEST_CASE("clean_text strips controls and applies NFC") {
    CHECK(clean_text("a\x01\x02z") == "az");
    CHECK(clean_text("é") == "é");
    CHECK(clean_text("café") == "café");
    // case is preserved
    CHECK(clean_text("MiXeD Case") == "MiXeD Case");
    // invalid utf-8 bytes are noise
    CHECK(clean_text("ok\x80\xFFgo") == "okgo");
}

TEST_CASE("map_main_label majority and severity tie-break") {
    LabelSchema schema = test_schema();
    MappingRules rules;
    CHECK(map_main_label({"hate", "hate", "normal"}, rules, schema) == 0);
    CHECK(map_main_label({"offensive", "normal"}, rules, schema) == 1);
    CHECK(map_main_label({"hatespeech"}, rules, schema) == 0);  // alias
    CHECK(map_main_label({"Normal"}, rules, schema) == 2);      // case-insensitive
    CHECK(map_main_label({"hate", "normal"}, rules, schema) == 0);
    CHECK_THROWS_WITH(map_main_label({"spam"}, rules, schema),
                      Catch::Matchers::ContainsSubstring("spam"));
    CHECK_THROWS_AS(map_main_label({}, rules, schema), std::invalid_argument);
}

TEST_CASE("validate reports every violation") {
    LabelSchema schema = test_schema();

    Sample good{"s1", "some text", "en", std::vector<uint8_t>{1, 0, 1}, 2, Provenance::gold};
    CHECK(validate(good, schema).empty());

    Sample bad = good;
    bad.text = "";
    bad.multi_label = std::vector<uint8_t>{1, 0};
    bad.main_label = 7;
    auto v = validate(bad, schema);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == "empty text");
    CHECK(v[1] == "multi_label length");
    CHECK(v[2] == "main_label out of range");

    Sample pseudo{"s2", "text", "en", std::nullopt, std::nullopt, Provenance::pseudo};
    auto pv = validate(pseudo, schema);
    REQUIRE(pv.size() == 1);
    CHECK(pv[0] == "pseudo unlabeled");
}

TEST_CASE("check_split flags duplicate ids and labeled unlabeled-pool samples") {
    LabelSchema schema = test_schema();
    DatasetSplit split;
    split.labeled.push_back({"a", "x", "en", std::nullopt, 0, Provenance::gold});
    split.test.push_back({"a", "y", "en", std::nullopt, 1, Provenance::gold});
    split.unlabeled.push_back({"b", "z", "en", std::nullopt, 1, Provenance::gold});
    auto v = check_split(split);
    REQUIRE(v.size() == 2);
    CHECK(v[0].find("duplicate id") != std::string::npos);
    CHECK(v[1].find("carries labels") != std::string::npos);
}

TEST_CASE("schema check rejects duplicates and degenerate sizes") {
    LabelSchema ok = test_schema();
    CHECK_NOTHROW(ok.check());

    LabelSchema dup = ok;
    dup.multi_labels = {"x", "x"};
    CHECK_THROWS_AS(dup.check(), std::invalid_argument);

    LabelSchema empty;
    CHECK_THROWS_AS(empty.check(), std::invalid_argument);
}
