#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bagpack/corpus.hpp"
#include "bagpack/error.hpp"

namespace bagpack {

// Window geometry for the occurrence and pair patterns, plus the observation
// cap applied to every context query.
struct WindowConfig {
    int single_side_max = 4;            // tokens on each side of a single target
    int pair_outer_max = 2;             // tokens before/after a pair
    int pair_gap_max = 5;               // tokens between the two targets
    std::size_t max_observations = 5000;  // first-N cap per query (per order for pairs)

    void validate() const {
        if (single_side_max < 0 || pair_outer_max < 0 || pair_gap_max < 0)
            throw InputError("window sizes must be non-negative");
        if (max_observations < 1) throw InputError("max_observations must be >= 1");
    }
};

// One occurrence of a single target with its maximal in-sentence window.
struct SingleContext {
    std::vector<std::string> pre;   // up to single_side_max tokens before the target
    std::vector<std::string> post;  // up to single_side_max tokens after the target
    std::size_t sentence_index = 0;
    std::size_t target_position = 0;

    bool operator==(const SingleContext&) const = default;
};

enum class PairOrder { Forward, Reverse };  // Forward: w1 before w2

// One co-occurrence of the pair with its maximal in-sentence window. The
// between region never contains either target.
struct PairContext {
    PairOrder order = PairOrder::Forward;
    std::vector<std::string> pre;      // up to pair_outer_max tokens before the first target
    std::vector<std::string> between;  // up to pair_gap_max tokens between the targets
    std::vector<std::string> post;     // up to pair_outer_max tokens after the second target
    std::size_t sentence_index = 0;
    std::size_t first_position = 0;   // position of the earlier target
    std::size_t second_position = 0;  // position of the later target

    bool operator==(const PairContext&) const = default;
};

namespace detail {

inline std::vector<std::string> slice(const std::vector<std::string>& tokens,
                                      std::size_t begin, std::size_t end) {
    return std::vector<std::string>(tokens.begin() + begin, tokens.begin() + end);
}

}  // namespace detail

// All single contexts of w, in corpus order, truncated to the first
// cfg.max_observations occurrences. Zero occurrences yield an empty list.
inline std::vector<SingleContext> find_single_contexts(const Corpus& corpus,
                                                       const std::string& w,
                                                       const WindowConfig& cfg) {
    cfg.validate();
    if (w.empty()) throw InputError("target word must be non-empty");

    std::vector<SingleContext> out;
    const std::size_t side = static_cast<std::size_t>(cfg.single_side_max);
    for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
        const auto& t = corpus.sentences[s].tokens;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] != w) continue;
            SingleContext ctx;
            ctx.sentence_index = s;
            ctx.target_position = i;
            std::size_t pre_begin = i > side ? i - side : 0;
            std::size_t post_end = std::min(t.size(), i + 1 + side);
            ctx.pre = detail::slice(t, pre_begin, i);
            ctx.post = detail::slice(t, i + 1, post_end);
            out.push_back(std::move(ctx));
            if (out.size() >= cfg.max_observations) return out;
        }
    }
    return out;
}

// All pair contexts of (w1, w2), in corpus order. A qualifying observation is
// an ordered position pair (i, j), i < j, where one target sits at i and the
// other at j, the gap j-i-1 is at most pair_gap_max, and no token strictly
// between equals either target. Forward and Reverse observations are capped
// independently at cfg.max_observations.
inline std::vector<PairContext> find_pair_contexts(const Corpus& corpus,
                                                   const std::string& w1,
                                                   const std::string& w2,
                                                   const WindowConfig& cfg) {
    cfg.validate();
    if (w1.empty() || w2.empty()) throw InputError("target words must be non-empty");
    if (w1 == w2) throw InputError("invalid pair: identical targets '" + w1 + "'");

    std::vector<PairContext> out;
    std::size_t n_forward = 0, n_reverse = 0;
    const std::size_t outer = static_cast<std::size_t>(cfg.pair_outer_max);
    const std::size_t gap = static_cast<std::size_t>(cfg.pair_gap_max);

    for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
        if (n_forward >= cfg.max_observations && n_reverse >= cfg.max_observations) break;
        const auto& t = corpus.sentences[s].tokens;

        // Consecutive occurrences of either target; the exclusion constraint
        // on the between region makes non-consecutive pairs ineligible.
        std::size_t prev = t.size();  // position of the previous target occurrence
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (t[j] != w1 && t[j] != w2) continue;
            if (prev != t.size() && t[prev] != t[j] && j - prev - 1 <= gap) {
                PairOrder order = t[prev] == w1 ? PairOrder::Forward : PairOrder::Reverse;
                std::size_t& count = order == PairOrder::Forward ? n_forward : n_reverse;
                if (count < cfg.max_observations) {
                    PairContext ctx;
                    ctx.order = order;
                    ctx.sentence_index = s;
                    ctx.first_position = prev;
                    ctx.second_position = j;
                    std::size_t pre_begin = prev > outer ? prev - outer : 0;
                    std::size_t post_end = std::min(t.size(), j + 1 + outer);
                    ctx.pre = detail::slice(t, pre_begin, prev);
                    ctx.between = detail::slice(t, prev + 1, j);
                    ctx.post = detail::slice(t, j + 1, post_end);
                    out.push_back(std::move(ctx));
                    ++count;
                }
            }
            prev = j;
        }
    }
    return out;
}

}  // namespace bagpack
