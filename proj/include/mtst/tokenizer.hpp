#pragma once

// Byte-level BPE tokenizer. Base alphabet is the 256 byte values, so any
// input is encodable without [UNK]; merges are learned greedily by pair
// frequency with a deterministic tie-break (lowest id pair).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mtst {

struct Vocabulary {
    static constexpr int kPad = 0, kUnk = 1, kCls = 2, kSep = 3;
    static constexpr int kNumSpecials = 4;
    static constexpr int kByteBase = kNumSpecials;  // ids 4..259 are bytes 0..255

    std::vector<std::pair<int, int>> merges;     // merge i produces id kByteBase + 256 + i
    std::vector<std::string> token_bytes;        // per id; empty for specials

    int size() const { return kByteBase + 256 + static_cast<int>(merges.size()); }

    static Vocabulary bytes_only() {
        Vocabulary v;
        v.rebuild_token_bytes();
        return v;
    }

    void rebuild_token_bytes() {
        token_bytes.assign(static_cast<size_t>(size()), std::string());
        for (int b = 0; b < 256; ++b) token_bytes[static_cast<size_t>(kByteBase + b)] = std::string(1, static_cast<char>(b));
        for (size_t i = 0; i < merges.size(); ++i) {
            auto [l, r] = merges[i];
            size_t id = static_cast<size_t>(kByteBase + 256) + i;
            if (l < kByteBase || r < kByteBase || l >= static_cast<int>(id) || r >= static_cast<int>(id))
                throw std::runtime_error("vocabulary: merge " + std::to_string(i) + " references invalid ids");
            token_bytes[id] = token_bytes[static_cast<size_t>(l)] + token_bytes[static_cast<size_t>(r)];
        }
    }
};

struct TokenSequence {
    std::vector<int32_t> ids;        // length n_max
    std::vector<uint8_t> attention_mask;  // 1 iff position < true_length
    int true_length = 0;
};

namespace bpe_detail {

inline std::vector<int> to_byte_ids(std::string_view text) {
    std::vector<int> ids;
    ids.reserve(text.size());
    for (unsigned char c : text) ids.push_back(Vocabulary::kByteBase + c);
    return ids;
}

// Replaces every left-to-right non-overlapping occurrence of (l, r) with id.
inline void apply_merge(std::vector<int>& seq, int l, int r, int id) {
    size_t w = 0;
    for (size_t i = 0; i < seq.size();) {
        if (i + 1 < seq.size() && seq[i] == l && seq[i + 1] == r) {
            seq[w++] = id;
            i += 2;
        } else {
            seq[w++] = seq[i++];
        }
    }
    seq.resize(w);
}

}  // namespace bpe_detail

// Deterministic given corpus order; the seed is accepted for interface
// symmetry with the other constructors but BPE itself has no random choices.
inline Vocabulary train_vocab(const std::vector<std::string>& corpus, int target_size,
                              uint64_t /*seed*/ = 0) {
    if (corpus.empty()) throw std::invalid_argument("train_vocab: empty corpus");
    const int floor_size = Vocabulary::kNumSpecials + 256;
    if (target_size <= floor_size)
        throw std::invalid_argument("train_vocab: target_size must exceed " + std::to_string(floor_size));

    std::vector<std::vector<int>> seqs;
    seqs.reserve(corpus.size());
    for (const auto& text : corpus) seqs.push_back(bpe_detail::to_byte_ids(text));

    Vocabulary vocab;
    int next_id = floor_size;
    while (next_id < target_size) {
        std::map<std::pair<int, int>, size_t> counts;
        for (const auto& seq : seqs)
            for (size_t i = 0; i + 1 < seq.size(); ++i) ++counts[{seq[i], seq[i + 1]}];
        std::pair<int, int> best{-1, -1};
        size_t best_count = 1;  // require at least 2 occurrences
        for (const auto& [pair, count] : counts) {
            if (count > best_count) {
                best_count = count;
                best = pair;
            }
        }
        if (best.first < 0) break;
        vocab.merges.push_back(best);
        for (auto& seq : seqs) bpe_detail::apply_merge(seq, best.first, best.second, next_id);
        ++next_id;
    }
    vocab.rebuild_token_bytes();
    return vocab;
}

// Applies merges in training order (lowest rank first) until none apply.
inline std::vector<int> tokenize_bytes(std::string_view text, const Vocabulary& vocab) {
    std::vector<int> seq = bpe_detail::to_byte_ids(text);
    if (vocab.merges.empty() || seq.size() < 2) return seq;
    std::map<std::pair<int, int>, int> rank;
    for (size_t i = 0; i < vocab.merges.size(); ++i) rank[vocab.merges[i]] = static_cast<int>(i);
    while (seq.size() >= 2) {
        int best_rank = -1;
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            auto it = rank.find({seq[i], seq[i + 1]});
            if (it != rank.end() && (best_rank < 0 || it->second < best_rank)) best_rank = it->second;
        }
        if (best_rank < 0) break;
        auto [l, r] = vocab.merges[static_cast<size_t>(best_rank)];
        bpe_detail::apply_merge(seq, l, r, Vocabulary::kByteBase + 256 + best_rank);
    }
    return seq;
}

inline TokenSequence encode(std::string_view text, const Vocabulary& vocab, int n_max) {
    if (n_max < 3) throw std::invalid_argument("encode: n_max must be >= 3");
    std::vector<int> content = tokenize_bytes(text, vocab);
    const size_t keep = std::min(content.size(), static_cast<size_t>(n_max - 2));

    TokenSequence seq;
    seq.ids.assign(static_cast<size_t>(n_max), Vocabulary::kPad);
    seq.attention_mask.assign(static_cast<size_t>(n_max), 0);
    seq.ids[0] = Vocabulary::kCls;
    for (size_t i = 0; i < keep; ++i) seq.ids[i + 1] = content[i];
    seq.ids[keep + 1] = Vocabulary::kSep;
    seq.true_length = static_cast<int>(keep) + 2;
    for (int i = 0; i < seq.true_length; ++i) seq.attention_mask[static_cast<size_t>(i)] = 1;
    return seq;
}

inline std::string decode(const TokenSequence& seq, const Vocabulary& vocab) {
    std::string out;
    for (int i = 0; i < seq.true_length; ++i) {
        int id = seq.ids[static_cast<size_t>(i)];
        if (id < 0 || id >= vocab.size())
            throw std::runtime_error("decode: corrupt token id " + std::to_string(id));
        if (id < Vocabulary::kNumSpecials) continue;
        out += vocab.token_bytes[static_cast<size_t>(id)];
    }
    return out;
}

// --- persistence -----------------------------------------------------------
//
// Versioned JSON: token byte strings are stored as codepoints U+0000..U+00FF
// (latin-1 style) so arbitrary bytes survive the UTF-8 JSON encoding.

namespace bpe_detail {

inline std::string bytes_to_json_string(const std::string& bytes) {
    std::string out;
    for (unsigned char c : bytes) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

inline std::string json_string_to_bytes(const std::string& s) {
    std::string out;
    for (size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
        } else {
            if (i + 1 >= s.size()) throw std::runtime_error("vocabulary file: bad token escape");
            out.push_back(static_cast<char>(((c & 0x1F) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3F)));
            i += 2;
        }
    }
    return out;
}

}  // namespace bpe_detail

inline void save_vocab(const Vocabulary& vocab, const std::string& path) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["specials"] = {{"pad", Vocabulary::kPad},
                     {"unk", Vocabulary::kUnk},
                     {"cls", Vocabulary::kCls},
                     {"sep", Vocabulary::kSep}};
    auto tokens = nlohmann::ordered_json::array();
    tokens.push_back("[PAD]");
    tokens.push_back("[UNK]");
    tokens.push_back("[CLS]");
    tokens.push_back("[SEP]");
    for (int id = Vocabulary::kByteBase; id < vocab.size(); ++id)
        tokens.push_back(bpe_detail::bytes_to_json_string(vocab.token_bytes[static_cast<size_t>(id)]));
    j["tokens"] = std::move(tokens);
    auto merges = nlohmann::ordered_json::array();
    for (auto [l, r] : vocab.merges) merges.push_back({l, r});
    j["merges"] = std::move(merges);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write vocabulary: " + path);
    out << j.dump(2) << '\n';
}

inline Vocabulary load_vocab(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open vocabulary: " + path);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::runtime_error("vocabulary file: unsupported version");
    Vocabulary vocab;
    for (const auto& m : j["merges"]) vocab.merges.push_back({m[0].get<int>(), m[1].get<int>()});
    vocab.rebuild_token_bytes();
    const auto& tokens = j["tokens"];
    if (static_cast<int>(tokens.size()) != vocab.size())
        throw std::runtime_error("vocabulary file: token count does not match merges");
    for (int id = Vocabulary::kByteBase; id < vocab.size(); ++id) {
        if (bpe_detail::json_string_to_bytes(tokens[static_cast<size_t>(id)].get<std::string>()) !=
            vocab.token_bytes[static_cast<size_t>(id)])
            throw std::runtime_error("vocabulary file: token " + std::to_string(id) + " inconsistent with merges");
    }
    return vocab;
}

}  // namespace mtst
