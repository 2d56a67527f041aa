#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bagpack/error.hpp"

namespace bagpack {

// A sentence is an ordered list of lowercase tokens; sentences are the hard
// boundary unit for all window matching.
struct Sentence {
    std::vector<std::string> tokens;
};

struct Corpus {
    std::vector<Sentence> sentences;
    std::size_t token_count = 0;
};

struct BigramHash {
    std::size_t operator()(const std::pair<std::string, std::string>& p) const {
        std::size_t h1 = std::hash<std::string>()(p.first);
        std::size_t h2 = std::hash<std::string>()(p.second);
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

using Bigram = std::pair<std::string, std::string>;

struct FreqTable {
    std::unordered_map<std::string, std::uint64_t> unigrams;
    std::unordered_map<Bigram, std::uint64_t, BigramHash> bigrams;
};

namespace detail {

// Strict UTF-8 scan. Returns the byte offset of the first invalid sequence,
// or npos if the whole buffer is valid. Rejects overlong forms, surrogates
// and code points above U+10FFFF.
inline std::size_t find_invalid_utf8(std::string_view bytes) {
    const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = s[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        std::uint32_t cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return i;
        }
        if (i + len > n) return i;
        for (std::size_t k = 1; k < len; ++k) {
            if ((s[i + k] & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (s[i + k] & 0x3F);
        }
        if (len == 2 && cp < 0x80) return i;
        if (len == 3 && (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))) return i;
        if (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) return i;
        i += len;
    }
    return std::string_view::npos;
}

inline void fold_ascii_lower(std::string& s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
}

}  // namespace detail

// Reads a corpus: UTF-8 text, one sentence per line, tokens separated by one
// or more spaces or tabs. Tokens are folded to ASCII lowercase; empty lines
// are skipped. A trailing CR on a line is ignored.
inline Corpus load_corpus(std::string_view bytes) {
    std::size_t bad = detail::find_invalid_utf8(bytes);
    if (bad != std::string_view::npos)
        throw InputError("corpus is not valid UTF-8 at byte offset " + std::to_string(bad));

    Corpus corpus;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i <= bytes.size(); ++i) {
        if (i != bytes.size() && bytes[i] != '\n') continue;
        std::string_view line = bytes.substr(line_start, i - line_start);
        line_start = i + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        Sentence sent;
        std::size_t tok_start = 0;
        for (std::size_t j = 0; j <= line.size(); ++j) {
            if (j != line.size() && line[j] != ' ' && line[j] != '\t') continue;
            if (j > tok_start) {
                std::string tok(line.substr(tok_start, j - tok_start));
                detail::fold_ascii_lower(tok);
                sent.tokens.push_back(std::move(tok));
            }
            tok_start = j + 1;
        }
        if (!sent.tokens.empty()) {
            corpus.token_count += sent.tokens.size();
            corpus.sentences.push_back(std::move(sent));
        }
    }
    if (corpus.sentences.empty()) throw InputError("corpus contains no sentences");
    return corpus;
}

inline Corpus load_corpus(std::istream& in) {
    std::string bytes(std::istreambuf_iterator<char>(in), {});
    return load_corpus(std::string_view(bytes));
}

// Unigram and bigram frequencies; bigrams never cross sentence boundaries.
inline FreqTable count_ngrams(const Corpus& corpus) {
    if (corpus.sentences.empty()) throw InputError("cannot count n-grams of an empty corpus");
    FreqTable freq;
    for (const Sentence& sent : corpus.sentences) {
        const auto& t = sent.tokens;
        for (std::size_t i = 0; i < t.size(); ++i) {
            ++freq.unigrams[t[i]];
            if (i + 1 < t.size()) ++freq.bigrams[{t[i], t[i + 1]}];
        }
    }
    return freq;
}

}  // namespace bagpack
