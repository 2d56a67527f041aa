#include <catch2/catch_amalgamated.hpp>

#include "bagpack/contexts.hpp"
#include "bagpack/util.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace bagpack;
using testutil::corpus_of;

namespace {
const WindowConfig kDefault{};
}

TEST_CASE("single contexts take maximal sentence-bounded windows", "[contexts]") {
    Corpus c = corpus_of({{"a", "b", "w", "c"}});
    auto ctxs = find_single_contexts(c, "w", kDefault);
    REQUIRE(ctxs.size() == 1);
    REQUIRE(ctxs[0].pre == std::vector<std::string>{"a", "b"});
    REQUIRE(ctxs[0].post == std::vector<std::string>{"c"});
    REQUIRE(ctxs[0].sentence_index == 0);
    REQUIRE(ctxs[0].target_position == 2);
}

TEST_CASE("side windows are clipped to single_side_max", "[contexts]") {
    Corpus c = corpus_of({{"1", "2", "3", "4", "5", "w", "6", "7", "8", "9", "10"}});
    auto ctxs = find_single_contexts(c, "w", kDefault);
    REQUIRE(ctxs.size() == 1);
    REQUIRE(ctxs[0].pre == std::vector<std::string>{"2", "3", "4", "5"});
    REQUIRE(ctxs[0].post == std::vector<std::string>{"6", "7", "8", "9"});
}

TEST_CASE("self-adjacent occurrences each produce a context", "[contexts]") {
    Corpus c = corpus_of({{"w", "w"}});
    auto ctxs = find_single_contexts(c, "w", kDefault);
    REQUIRE(ctxs.size() == 2);
    REQUIRE(ctxs[0].pre.empty());
    REQUIRE(ctxs[0].post == std::vector<std::string>{"w"});
    REQUIRE(ctxs[1].pre == std::vector<std::string>{"w"});
    REQUIRE(ctxs[1].post.empty());
}

TEST_CASE("zero occurrences fall back to an empty list", "[contexts]") {
    Corpus c = corpus_of({{"a", "b"}});
    REQUIRE(find_single_contexts(c, "zzz", kDefault).empty());
}

TEST_CASE("single contexts keep the first max_observations occurrences", "[contexts]") {
    // 6000 scattered occurrences at known positions
    Corpus c;
    Rng rng(99);
    std::vector<std::pair<std::size_t, std::size_t>> planted;
    for (std::size_t s = 0; s < 3000; ++s) {
        Sentence sent;
        std::size_t lead = rng.below(4);
        for (std::size_t i = 0; i < lead; ++i) sent.tokens.push_back("x");
        sent.tokens.push_back("w");
        planted.emplace_back(s, lead);
        sent.tokens.push_back("y");
        sent.tokens.push_back("w");
        planted.emplace_back(s, lead + 2);
        c.token_count += sent.tokens.size();
        c.sentences.push_back(std::move(sent));
    }
    REQUIRE(planted.size() == 6000);
    auto ctxs = find_single_contexts(c, "w", kDefault);
    REQUIRE(ctxs.size() == 5000);
    for (std::size_t i = 0; i < 5000; ++i) {
        REQUIRE(ctxs[i].sentence_index == planted[i].first);
        REQUIRE(ctxs[i].target_position == planted[i].second);
    }
}

TEST_CASE("the lion/cat sentence yields one reverse pair context", "[contexts]") {
    Corpus c = corpus_of({{"lion", "is", "the", "only", "cat", "that", "lives", "in", "large",
                           "social", "groups"}});
    auto ctxs = find_pair_contexts(c, "cat", "lion", kDefault);
    REQUIRE(ctxs.size() == 1);
    const PairContext& ctx = ctxs[0];
    REQUIRE(ctx.order == PairOrder::Reverse);
    REQUIRE(ctx.pre.empty());
    REQUIRE(ctx.between == std::vector<std::string>{"is", "the", "only"});
    REQUIRE(ctx.post == std::vector<std::string>{"that", "lives"});
    REQUIRE(ctx.first_position == 0);
    REQUIRE(ctx.second_position == 4);
}

TEST_CASE("a gap beyond pair_gap_max does not match", "[contexts]") {
    Corpus c = corpus_of({{"w1", "a", "b", "c", "d", "e", "f", "w2"}});
    REQUIRE(find_pair_contexts(c, "w1", "w2", kDefault).empty());
    // exactly at the limit it does
    Corpus ok = corpus_of({{"w1", "a", "b", "c", "d", "e", "w2"}});
    REQUIRE(find_pair_contexts(ok, "w1", "w2", kDefault).size() == 1);
}

TEST_CASE("identical targets are rejected", "[contexts]") {
    Corpus c = corpus_of({{"a", "b"}});
    REQUIRE_THROWS_AS(find_pair_contexts(c, "a", "a", kDefault), InputError);
}

TEST_CASE("a target inside the gap blocks the wider match", "[contexts]") {
    // w1 .. w1 .. w2: only the inner (w1, w2) pair qualifies
    Corpus c = corpus_of({{"w1", "x", "w1", "y", "w2"}});
    auto ctxs = find_pair_contexts(c, "w1", "w2", kDefault);
    REQUIRE(ctxs.size() == 1);
    REQUIRE(ctxs[0].first_position == 2);
    REQUIRE(ctxs[0].second_position == 4);
}

TEST_CASE("overlapping occurrences count once per qualifying pair", "[contexts]") {
    // w1 at 2 and 9, w2 at 5: both sides of w2 qualify, one per direction
    Corpus c = corpus_of(
        {{"a", "b", "w1", "c", "d", "w2", "e", "f", "g", "w1", "h"}});
    auto ctxs = find_pair_contexts(c, "w1", "w2", kDefault);
    REQUIRE(ctxs.size() == 2);
    REQUIRE(ctxs[0].order == PairOrder::Forward);
    REQUIRE(ctxs[0].first_position == 2);
    REQUIRE(ctxs[0].second_position == 5);
    REQUIRE(ctxs[1].order == PairOrder::Reverse);
    REQUIRE(ctxs[1].first_position == 5);
    REQUIRE(ctxs[1].second_position == 9);
}

TEST_CASE("pair contexts match the quadratic enumerator on random corpora", "[contexts]") {
    Rng rng(2024);
    for (int round = 0; round < 10; ++round) {
        Corpus c = testutil::random_corpus(rng, 2000, 12, 30);
        std::string w1 = testutil::vocab_token(rng.below(30));
        std::string w2 = testutil::vocab_token((rng.below(29) + 1 +
                                                std::stoul(w1.substr(1))) % 30);
        auto got = find_pair_contexts(c, w1, w2, kDefault);
        auto want = oracle::pair_contexts(c, w1, w2, kDefault);
        REQUIRE(got == want);
    }
}

TEST_CASE("single contexts match the reference scanner on random corpora", "[contexts]") {
    Rng rng(2025);
    for (int round = 0; round < 10; ++round) {
        Corpus c = testutil::random_corpus(rng, 1500, 10, 15);
        std::string w = testutil::vocab_token(rng.below(15));
        REQUIRE(find_single_contexts(c, w, kDefault) == oracle::single_contexts(c, w, kDefault));
    }
}

TEST_CASE("swapping the pair flips order labels and nothing else", "[contexts]") {
    Rng rng(31);
    for (int round = 0; round < 8; ++round) {
        Corpus c = testutil::random_corpus(rng, 800, 10, 12);
        auto fwd = find_pair_contexts(c, "t1", "t2", kDefault);
        auto rev = find_pair_contexts(c, "t2", "t1", kDefault);
        REQUIRE(fwd.size() == rev.size());
        for (std::size_t i = 0; i < fwd.size(); ++i) {
            PairContext flipped = rev[i];
            flipped.order = flipped.order == PairOrder::Forward ? PairOrder::Reverse
                                                                : PairOrder::Forward;
            REQUIRE(fwd[i] == flipped);
        }
    }
}

TEST_CASE("between regions exclude both targets and regions are maximal", "[contexts]") {
    Rng rng(57);
    Corpus c = testutil::random_corpus(rng, 1200, 11, 8);
    auto ctxs = find_pair_contexts(c, "t0", "t1", kDefault);
    REQUIRE(!ctxs.empty());
    for (const PairContext& ctx : ctxs) {
        for (const std::string& tok : ctx.between) {
            REQUIRE(tok != "t0");
            REQUIRE(tok != "t1");
        }
        // maximality: a region is shorter than its cap only at a sentence edge
        const auto& sent = c.sentences[ctx.sentence_index].tokens;
        if (ctx.pre.size() < 2) REQUIRE(ctx.first_position == ctx.pre.size());
        if (ctx.post.size() < 2)
            REQUIRE(ctx.second_position + ctx.post.size() + 1 == sent.size());
        REQUIRE(ctx.second_position - ctx.first_position - 1 == ctx.between.size());
    }
}

TEST_CASE("forward and reverse observations are capped independently", "[contexts]") {
    // 7 forward then 7 reverse co-occurrences, cap 5 per order
    Corpus c;
    for (int i = 0; i < 7; ++i) c.sentences.push_back({{"a", "x", "b"}});
    for (int i = 0; i < 7; ++i) c.sentences.push_back({{"b", "x", "a"}});
    c.token_count = 42;
    WindowConfig cfg;
    cfg.max_observations = 5;
    auto ctxs = find_pair_contexts(c, "a", "b", cfg);
    std::size_t fwd = 0, rev = 0;
    for (const auto& ctx : ctxs) (ctx.order == PairOrder::Forward ? fwd : rev)++;
    REQUIRE(fwd == 5);
    REQUIRE(rev == 5);
    // the kept observations are the first five of each direction
    for (std::size_t i = 0; i < 5; ++i) REQUIRE(ctxs[i].sentence_index == i);
    for (std::size_t i = 5; i < 10; ++i) REQUIRE(ctxs[i].sentence_index == i + 2);
}

TEST_CASE("context queries are deterministic", "[contexts]") {
    Rng rng(8);
    Corpus c = testutil::random_corpus(rng, 500, 9, 6);
    REQUIRE(find_pair_contexts(c, "t0", "t1", kDefault) ==
            find_pair_contexts(c, "t0", "t1", kDefault));
    REQUIRE(find_single_contexts(c, "t2", kDefault) == find_single_contexts(c, "t2", kDefault));
}
