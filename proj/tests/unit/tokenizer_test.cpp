#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "mtst/rng.hpp"
#include "mtst/tokenizer.hpp"
#include "test_util.hpp"

using namespace mtst;
using mtst_test::TempDir;

TEST_CASE("train_vocab learns the aa merge from aaaa") {
    auto vocab = train_vocab({"aaaa"}, 262);
    REQUIRE_FALSE(vocab.merges.empty());
    int a_id = Vocabulary::kByteBase + 'a';
    CHECK(vocab.merges[0] == std::make_pair(a_id, a_id));
    CHECK(vocab.token_bytes[static_cast<size_t>(Vocabulary::kByteBase + 256)] == "aa");
}

TEST_CASE("train_vocab is deterministic") {
    std::vector<std::string> corpus{"the cat sat", "the dog sat", "the cat ran"};
    auto v1 = train_vocab(corpus, 300);
    auto v2 = train_vocab(corpus, 300);
    CHECK(v1.merges == v2.merges);
}

TEST_CASE("train_vocab rejects target below the byte floor") {
    CHECK_THROWS_AS(train_vocab({"abc"}, 100), std::invalid_argument);
    CHECK_THROWS_AS(train_vocab({}, 300), std::invalid_argument);
}

TEST_CASE("encode shape contract") {
    auto vocab = Vocabulary::bytes_only();

    SECTION("empty content") {
        auto seq = encode("", vocab, 8);
        CHECK(seq.true_length == 2);
        CHECK(seq.ids[0] == Vocabulary::kCls);
        CHECK(seq.ids[1] == Vocabulary::kSep);
        CHECK(seq.ids[2] == Vocabulary::kPad);
        CHECK(seq.attention_mask == std::vector<uint8_t>{1, 1, 0, 0, 0, 0, 0, 0});
    }

    SECTION("truncation bound") {
        auto seq = encode("abcdefghij", vocab, 8);
        CHECK(seq.true_length == 8);
        CHECK(seq.ids[0] == Vocabulary::kCls);
        CHECK(seq.ids[7] == Vocabulary::kSep);
        CHECK(seq.ids[1] == Vocabulary::kByteBase + 'a');
    }

    SECTION("mask sums to true_length") {
        auto seq = encode("hey", vocab, 16);
        int mask_sum = std::accumulate(seq.attention_mask.begin(), seq.attention_mask.end(), 0);
        CHECK(mask_sum == seq.true_length);
    }
}

TEST_CASE("decode inverts encode; decode of only specials is empty") {
    auto vocab = train_vocab({"hello world", "hello there"}, 280);
    CHECK(decode(encode("hello world", vocab, 32), vocab) == "hello world");

    TokenSequence specials;
    specials.ids = {Vocabulary::kCls, Vocabulary::kSep, Vocabulary::kPad};
    specials.attention_mask = {1, 1, 0};
    specials.true_length = 2;
    CHECK(decode(specials, vocab).empty());
}

TEST_CASE("decode rejects corrupt ids") {
    auto vocab = Vocabulary::bytes_only();
    TokenSequence seq;
    seq.ids = {Vocabulary::kCls, 1000000000, Vocabulary::kSep};
    seq.attention_mask = {1, 1, 1};
    seq.true_length = 3;
    CHECK_THROWS_WITH(decode(seq, vocab), Catch::Matchers::ContainsSubstring("corrupt"));
}

TEST_CASE("round-trip property over random unicode strings") {
    std::vector<std::string> corpus{"hello world", "байт pairs", "你好世界", "mixed 文本 and words"};
    auto vocab = train_vocab(corpus, 300);
    Rng rng(555);
    const int n_max = 64;
    for (int iter = 0; iter < 1000; ++iter) {
        std::string s;
        size_t n = rng.below(12);
        for (size_t i = 0; i < n; ++i) {
            switch (rng.below(4)) {
                case 0: s.push_back(static_cast<char>('a' + rng.below(26))); break;
                case 1: s += "你"; break;
                case 2: s += "é"; break;
                default: s.push_back(' '); break;
            }
        }
        auto seq = encode(s, vocab, n_max);
        if (seq.true_length - 2 < n_max - 2) {  // untruncated
            CAPTURE(s);
            REQUIRE(decode(seq, vocab) == s);
        }
    }
}

TEST_CASE("encoding is independent of surrounding batch") {
    auto vocab = train_vocab({"aa bb cc"}, 270);
    auto alone = encode("aa bb", vocab, 16);
    // encode other texts in between
    encode("cc cc cc", vocab, 16);
    auto again = encode("aa bb", vocab, 16);
    CHECK(alone.ids == again.ids);
    CHECK(alone.true_length == again.true_length);
}

TEST_CASE("vocabulary persists bit-exactly") {
    TempDir tmp;
    std::vector<std::string> corpus{"persistence test corpus", "with bytes \xF0\x9F\x98\x80 too"};
    auto vocab = train_vocab(corpus, 300);
    auto path = tmp.path() / "vocab.json";
    save_vocab(vocab, path.string());
    auto back = load_vocab(path.string());
    CHECK(back.merges == vocab.merges);
    CHECK(back.token_bytes == vocab.token_bytes);

    // re-saving produces identical bytes
    auto path2 = tmp.path() / "vocab2.json";
    save_vocab(back, path2.string());
    CHECK(mtst_test::slurp(path) == mtst_test::slurp(path2));
}
