#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bagpack/corpus.hpp"
#include "bagpack/features.hpp"
#include "bagpack/util.hpp"

namespace testutil {

inline bagpack::Corpus corpus_of(const std::vector<std::vector<std::string>>& sentences) {
    bagpack::Corpus c;
    for (const auto& s : sentences) {
        bagpack::Sentence sent;
        sent.tokens = s;
        c.token_count += s.size();
        c.sentences.push_back(std::move(sent));
    }
    return c;
}

// Random corpus over a numbered vocabulary "t0".."t{vocab-1}".
inline bagpack::Corpus random_corpus(bagpack::Rng& rng, std::size_t sentences,
                                     std::size_t max_len, std::size_t vocab) {
    bagpack::Corpus c;
    for (std::size_t s = 0; s < sentences; ++s) {
        bagpack::Sentence sent;
        std::size_t len = 1 + rng.below(max_len);
        for (std::size_t i = 0; i < len; ++i)
            sent.tokens.push_back("t" + std::to_string(rng.below(vocab)));
        c.token_count += len;
        c.sentences.push_back(std::move(sent));
    }
    return c;
}

inline std::string vocab_token(std::size_t i) { return "t" + std::to_string(i); }

// Basis over the numbered vocabulary: b unigrams t<u0>.., b bigrams.
inline bagpack::BasisSet random_basis(bagpack::Rng& rng, std::size_t b, std::size_t vocab) {
    std::vector<bagpack::BasisTerm> terms;
    std::vector<std::string> unis;
    for (std::size_t i = 0; i < vocab; ++i) unis.push_back(vocab_token(i));
    bagpack::shuffle(unis, rng);
    for (std::size_t i = 0; i < b; ++i)
        terms.push_back({bagpack::TermKind::Unigram, unis[i], "",
                         static_cast<std::uint32_t>(i), 1});
    std::vector<std::pair<std::string, std::string>> bis;
    for (std::size_t i = 0; i < vocab; ++i)
        for (std::size_t j = 0; j < vocab; ++j)
            if (i != j || vocab == 1) bis.push_back({vocab_token(i), vocab_token(j)});
    bagpack::shuffle(bis, rng);
    for (std::size_t i = 0; i < b; ++i)
        terms.push_back({bagpack::TermKind::Bigram, bis[i].first, bis[i].second,
                         static_cast<std::uint32_t>(b + i), 1});
    return bagpack::BasisSet(b, std::move(terms));
}

// Scratch directory wiped on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        base_ = std::filesystem::temp_directory_path() /
                ("bagpack_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(base_);
        std::filesystem::create_directories(base_);
    }
    ~TempDir() { std::filesystem::remove_all(base_); }

    std::string path(const std::string& name) const { return (base_ / name).string(); }

private:
    std::filesystem::path base_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace testutil
