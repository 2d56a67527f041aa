#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "bagpack/contexts.hpp"
#include "bagpack/corpus.hpp"
#include "bagpack/error.hpp"

namespace bagpack {

enum class TermKind { Unigram, Bigram };

struct BasisTerm {
    TermKind kind = TermKind::Unigram;
    std::string first;
    std::string second;       // empty for unigrams
    std::uint32_t rank = 0;   // [0,b) for unigrams, [b,2b) for bigrams
    std::uint64_t count = 0;  // corpus frequency backing the selection
};

// The 2b ranked basis terms: b unigrams followed by b bigrams. Immutable
// after construction; lookups are by exact token match.
class BasisSet {
public:
    BasisSet() = default;

    BasisSet(std::size_t b, std::vector<BasisTerm> terms) : b_(b), terms_(std::move(terms)) {
        if (b_ < 1) throw InputError("basis size b must be >= 1");
        if (terms_.size() != 2 * b_)
            throw InputError("basis must hold exactly 2b terms, got " +
                             std::to_string(terms_.size()));
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const BasisTerm& t = terms_[i];
            if (t.rank != i) throw InputError("basis ranks must be contiguous from 0");
            bool is_uni = i < b_;
            if (is_uni != (t.kind == TermKind::Unigram))
                throw InputError("basis must list b unigrams then b bigrams");
            if (t.first.empty() || (t.kind == TermKind::Bigram) != !t.second.empty())
                throw InputError("malformed basis term at rank " + std::to_string(i));
            bool inserted = t.kind == TermKind::Unigram
                                ? unigram_rank_.emplace(t.first, t.rank).second
                                : bigram_rank_.emplace(t.first + ' ' + t.second, t.rank).second;
            if (!inserted) throw InputError("duplicate basis term at rank " + std::to_string(i));
        }
    }

    std::size_t b() const { return b_; }
    const std::vector<BasisTerm>& terms() const { return terms_; }

    std::optional<std::uint32_t> unigram_rank(const std::string& tok) const {
        auto it = unigram_rank_.find(tok);
        if (it == unigram_rank_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::uint32_t> bigram_rank(const std::string& a, const std::string& b) const {
        auto it = bigram_rank_.find(a + ' ' + b);
        if (it == bigram_rank_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::size_t b_ = 0;
    std::vector<BasisTerm> terms_;
    std::unordered_map<std::string, std::uint32_t> unigram_rank_;
    std::unordered_map<std::string, std::uint32_t> bigram_rank_;  // keyed "first second"
};

// Feature-space layout over 2b basis terms: v1 and v2 take 2 slots per term
// (pre/post), the pair block takes 6 (order sign x pre/post/betw).
//   v1    [0, 4b)     index = 2*rank + slot
//   v2    [4b, 8b)    index = 4b + 2*rank + slot
//   v1,2  [8b, 20b)   index = 8b + 6*rank + slot
enum class SingleSlot : std::uint32_t { Pre = 0, Post = 1 };
enum class PairSlot : std::uint32_t {
    PlusPre = 0, PlusPost = 1, PlusBetw = 2,   // w1 before w2
    MinusPre = 3, MinusPost = 4, MinusBetw = 5 // w2 before w1
};

constexpr std::size_t feature_dim(std::size_t b) { return 20 * b; }
constexpr std::size_t singles_dim(std::size_t b) { return 8 * b; }

constexpr std::uint32_t v1_feature(std::uint32_t rank, SingleSlot s) {
    return 2 * rank + static_cast<std::uint32_t>(s);
}
constexpr std::uint32_t v2_feature(std::size_t b, std::uint32_t rank, SingleSlot s) {
    return static_cast<std::uint32_t>(4 * b) + 2 * rank + static_cast<std::uint32_t>(s);
}
constexpr std::uint32_t pair_feature(std::size_t b, std::uint32_t rank, PairSlot s) {
    return static_cast<std::uint32_t>(8 * b) + 6 * rank + static_cast<std::uint32_t>(s);
}

// Human-readable feature name, e.g. "v1:only:pre" or "v12:that:-post".
inline std::string describe_feature(const BasisSet& basis, std::uint32_t idx) {
    const std::size_t b = basis.b();
    std::string block, slot;
    std::uint32_t rank;
    if (idx < 4 * b) {
        block = "v1";
        rank = idx / 2;
        slot = idx % 2 == 0 ? "pre" : "post";
    } else if (idx < 8 * b) {
        block = "v2";
        rank = (idx - static_cast<std::uint32_t>(4 * b)) / 2;
        slot = idx % 2 == 0 ? "pre" : "post";
    } else if (idx < 20 * b) {
        block = "v12";
        std::uint32_t off = idx - static_cast<std::uint32_t>(8 * b);
        rank = off / 6;
        static const char* names[6] = {"+pre", "+post", "+betw", "-pre", "-post", "-betw"};
        slot = names[off % 6];
    } else {
        throw Error("feature index out of range");
    }
    const BasisTerm& t = basis.terms().at(rank);
    std::string term = t.second.empty() ? t.first : t.first + ' ' + t.second;
    return block + ':' + term + ':' + slot;
}

// Sparse vector for one word pair; zero counts are never stored.
struct PairVector {
    std::string w1, w2;
    std::map<std::uint32_t, std::uint32_t> entries;

    bool operator==(const PairVector&) const = default;
};

// True iff the pair block carries at least one count.
inline bool seen_together(const PairVector& v, std::size_t b) {
    return v.entries.lower_bound(static_cast<std::uint32_t>(8 * b)) != v.entries.end();
}

struct PairSpec {
    std::string w1, w2;
    std::string label;  // empty when absent
};

// Rows = word pairs over a shared 20b column space. col_begin/col_end mark
// the active column window so projected matrices keep original feature ids.
struct CoocMatrix {
    std::size_t b = 0;
    std::uint32_t col_begin = 0, col_end = 0;
    std::vector<PairVector> rows;
    std::vector<std::string> labels;  // parallel to rows, empty string = unlabeled

    std::size_t cols() const { return col_end - col_begin; }
};

enum class Condition { SinglesOnly, PairOnly, Full };

// Top-b unigrams and top-b bigrams by count, ties broken by ascending term.
inline BasisSet select_basis(const FreqTable& freq, std::size_t b) {
    if (b < 1) throw InputError("basis size b must be >= 1");
    if (freq.unigrams.size() < b || freq.bigrams.size() < b)
        throw InputError("basis shortfall: need " + std::to_string(b) +
                         " unigrams and bigrams, corpus has " +
                         std::to_string(freq.unigrams.size()) + " unigrams and " +
                         std::to_string(freq.bigrams.size()) + " bigrams");

    std::vector<std::pair<std::string, std::uint64_t>> unis(freq.unigrams.begin(),
                                                            freq.unigrams.end());
    auto uni_order = [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    };
    std::partial_sort(unis.begin(), unis.begin() + b, unis.end(), uni_order);

    std::vector<std::pair<Bigram, std::uint64_t>> bis(freq.bigrams.begin(), freq.bigrams.end());
    auto bi_order = [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    };
    std::partial_sort(bis.begin(), bis.begin() + b, bis.end(), bi_order);

    std::vector<BasisTerm> terms;
    terms.reserve(2 * b);
    for (std::size_t i = 0; i < b; ++i)
        terms.push_back({TermKind::Unigram, unis[i].first, "",
                         static_cast<std::uint32_t>(i), unis[i].second});
    for (std::size_t i = 0; i < b; ++i)
        terms.push_back({TermKind::Bigram, bis[i].first.first, bis[i].first.second,
                         static_cast<std::uint32_t>(b + i), bis[i].second});
    return BasisSet(b, std::move(terms));
}

// Per-pair query statistics; used by the CLI for progress logging.
struct PairStats {
    std::size_t singles_w1 = 0, singles_w2 = 0;
    std::size_t pair_forward = 0, pair_reverse = 0;
    bool truncated = false;  // some context list hit the observation cap
};

namespace detail {

template <typename FeatureOf>
void tally_region(const std::vector<std::string>& region, const BasisSet& basis,
                  std::map<std::uint32_t, std::uint32_t>& entries, FeatureOf&& feature_of) {
    for (const std::string& tok : region)
        if (auto r = basis.unigram_rank(tok)) ++entries[feature_of(*r)];
    for (std::size_t i = 0; i + 1 < region.size(); ++i)
        if (auto r = basis.bigram_rank(region[i], region[i + 1])) ++entries[feature_of(*r)];
}

inline WindowConfig probe_config(const WindowConfig& cfg) {
    WindowConfig probe = cfg;
    if (probe.max_observations < SIZE_MAX) ++probe.max_observations;
    return probe;
}

}  // namespace detail

// The concatenated vector v1 ++ v2 ++ v1,2 for one pair. Counts reflect the
// capped context lists; `stats` (optional) reports list sizes and whether the
// cap truncated any of them.
inline PairVector build_pair_vector(const Corpus& corpus, const std::string& w1,
                                    const std::string& w2, const BasisSet& basis,
                                    const WindowConfig& cfg, PairStats* stats = nullptr) {
    const std::size_t b = basis.b();
    const std::size_t cap = cfg.max_observations;
    const WindowConfig probe = detail::probe_config(cfg);
    PairVector v;
    v.w1 = w1;
    v.w2 = w2;
    PairStats st;

    auto singles = find_single_contexts(corpus, w1, probe);
    if (singles.size() > cap) {
        st.truncated = true;
        singles.resize(cap);
    }
    st.singles_w1 = singles.size();
    for (const SingleContext& ctx : singles) {
        detail::tally_region(ctx.pre, basis, v.entries,
                             [&](std::uint32_t r) { return v1_feature(r, SingleSlot::Pre); });
        detail::tally_region(ctx.post, basis, v.entries,
                             [&](std::uint32_t r) { return v1_feature(r, SingleSlot::Post); });
    }

    singles = find_single_contexts(corpus, w2, probe);
    if (singles.size() > cap) {
        st.truncated = true;
        singles.resize(cap);
    }
    st.singles_w2 = singles.size();
    for (const SingleContext& ctx : singles) {
        detail::tally_region(ctx.pre, basis, v.entries,
                             [&](std::uint32_t r) { return v2_feature(b, r, SingleSlot::Pre); });
        detail::tally_region(ctx.post, basis, v.entries,
                             [&](std::uint32_t r) { return v2_feature(b, r, SingleSlot::Post); });
    }

    auto pairs = find_pair_contexts(corpus, w1, w2, probe);
    std::size_t n_fwd = 0, n_rev = 0;
    for (const PairContext& ctx : pairs) {
        std::size_t& count = ctx.order == PairOrder::Forward ? n_fwd : n_rev;
        if (count >= cap) {
            st.truncated = true;
            continue;
        }
        ++count;
        const bool fwd = ctx.order == PairOrder::Forward;
        const PairSlot pre_slot = fwd ? PairSlot::PlusPre : PairSlot::MinusPre;
        const PairSlot post_slot = fwd ? PairSlot::PlusPost : PairSlot::MinusPost;
        const PairSlot betw_slot = fwd ? PairSlot::PlusBetw : PairSlot::MinusBetw;
        detail::tally_region(ctx.pre, basis, v.entries,
                             [&](std::uint32_t r) { return pair_feature(b, r, pre_slot); });
        detail::tally_region(ctx.between, basis, v.entries,
                             [&](std::uint32_t r) { return pair_feature(b, r, betw_slot); });
        detail::tally_region(ctx.post, basis, v.entries,
                             [&](std::uint32_t r) { return pair_feature(b, r, post_slot); });
    }
    st.pair_forward = n_fwd;
    st.pair_reverse = n_rev;

    if (stats) *stats = st;
    return v;
}

// One row per pair, in input order; rows are built independently, optionally
// across threads. Output is identical for any thread count.
inline CoocMatrix build_matrix(const Corpus& corpus, const std::vector<PairSpec>& pairs,
                               const BasisSet& basis, const WindowConfig& cfg,
                               unsigned threads = 1,
                               const std::function<void(const std::string&)>& warn = nullptr,
                               std::vector<PairStats>* stats = nullptr) {
    if (pairs.empty()) throw InputError("pair list is empty");
    for (const PairSpec& p : pairs) {
        if (p.w1.empty() || p.w2.empty()) throw InputError("pair with empty word");
        if (p.w1 == p.w2) throw InputError("invalid pair: identical targets '" + p.w1 + "'");
    }
    if (warn) {
        std::map<std::pair<std::string, std::string>, std::size_t> seen;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto [it, fresh] = seen.emplace(std::make_pair(pairs[i].w1, pairs[i].w2), i);
            if (!fresh)
                warn("duplicate pair (" + pairs[i].w1 + ", " + pairs[i].w2 + ") at rows " +
                     std::to_string(it->second) + " and " + std::to_string(i));
        }
    }

    CoocMatrix m;
    m.b = basis.b();
    m.col_begin = 0;
    m.col_end = static_cast<std::uint32_t>(feature_dim(basis.b()));
    m.rows.resize(pairs.size());
    m.labels.reserve(pairs.size());
    for (const PairSpec& p : pairs) m.labels.push_back(p.label);
    if (stats) stats->assign(pairs.size(), PairStats{});

    if (threads <= 1 || pairs.size() == 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            m.rows[i] = build_pair_vector(corpus, pairs[i].w1, pairs[i].w2, basis, cfg,
                                          stats ? &(*stats)[i] : nullptr);
        return m;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            try {
                m.rows[i] = build_pair_vector(corpus, pairs[i].w1, pairs[i].w2, basis, cfg,
                                              stats ? &(*stats)[i] : nullptr);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(pairs.size()));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return m;
}

// Restricts the matrix to one of the three evaluation conditions. Entries
// keep their original feature ids; only the active window changes.
inline CoocMatrix project(const CoocMatrix& m, Condition c) {
    if (c == Condition::Full) return m;
    if (m.col_begin != 0 || m.col_end != feature_dim(m.b))
        throw Error("project requires a full-space matrix");
    CoocMatrix out;
    out.b = m.b;
    out.labels = m.labels;
    out.col_begin = c == Condition::SinglesOnly ? 0 : static_cast<std::uint32_t>(8 * m.b);
    out.col_end = c == Condition::SinglesOnly ? static_cast<std::uint32_t>(8 * m.b)
                                              : static_cast<std::uint32_t>(20 * m.b);
    out.rows.reserve(m.rows.size());
    for (const PairVector& row : m.rows) {
        PairVector r;
        r.w1 = row.w1;
        r.w2 = row.w2;
        for (auto it = row.entries.lower_bound(out.col_begin);
             it != row.entries.end() && it->first < out.col_end; ++it)
            r.entries.insert(r.entries.end(), *it);
        out.rows.push_back(std::move(r));
    }
    return out;
}

}  // namespace bagpack
