#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bagpack/error.hpp"
#include "bagpack/features.hpp"
#include "bagpack/util.hpp"

namespace bagpack {

// Seeded generator for planted-relation test corpora. Each relation gets its
// own marker tokens; pair words co-occur around them (PairContexts mode) or
// appear alone next to them (SingleContexts mode, no co-occurrence at all).
struct SynthConfig {
    enum class Mode { PairContexts, SingleContexts };

    std::size_t relations = 2;
    std::size_t pairs_per_relation = 20;
    std::size_t fillers = 50;             // filler vocabulary size
    std::size_t markers_per_relation = 3;
    std::size_t occurrences = 8;          // planted sentences per pair (per word in single mode)
    std::size_t extra_sentences = 200;    // filler-only sentences
    std::size_t sentence_len = 12;        // tokens per filler-only sentence
    Mode mode = Mode::PairContexts;
    std::uint64_t seed = 0;

    void validate() const {
        if (relations < 1) throw InputError("synth: need >= 1 relation");
        if (pairs_per_relation < 1) throw InputError("synth: need >= 1 pair per relation");
        if (markers_per_relation < 1) throw InputError("synth: need >= 1 marker per relation");
        if (occurrences < 1) throw InputError("synth: need >= 1 occurrence per pair");
        if (fillers < 2) throw InputError("synth: need >= 2 filler tokens");
        if (sentence_len < 2) throw InputError("synth: sentence_len must be >= 2");
    }
};

struct SynthData {
    std::vector<std::string> corpus_lines;  // one sentence per line
    std::vector<PairSpec> pairs;            // labeled rel<r>
};

inline SynthData synthesize(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    auto filler = [&] { return "f" + std::to_string(rng.below(cfg.fillers)); };
    auto marker = [&](std::size_t r) {
        return "m" + std::to_string(r) + "x" + std::to_string(rng.below(cfg.markers_per_relation));
    };

    SynthData data;
    std::vector<std::string> sentence;
    auto emit = [&] {
        std::string line;
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (i) line += ' ';
            line += sentence[i];
        }
        data.corpus_lines.push_back(std::move(line));
        sentence.clear();
    };
    auto pad = [&](std::size_t lo, std::size_t hi) {
        std::size_t n = lo + rng.below(hi - lo + 1);
        for (std::size_t i = 0; i < n; ++i) sentence.push_back(filler());
    };

    for (std::size_t r = 0; r < cfg.relations; ++r) {
        for (std::size_t p = 0; p < cfg.pairs_per_relation; ++p) {
            std::string a = "r" + std::to_string(r) + "a" + std::to_string(p);
            std::string b = "r" + std::to_string(r) + "b" + std::to_string(p);
            data.pairs.push_back({a, b, "rel" + std::to_string(r)});
            for (std::size_t occ = 0; occ < cfg.occurrences; ++occ) {
                if (cfg.mode == SynthConfig::Mode::PairContexts) {
                    pad(2, 4);
                    sentence.push_back(a);
                    sentence.push_back(marker(r));
                    sentence.push_back(b);
                    pad(2, 4);
                    emit();
                } else {
                    pad(2, 4);
                    sentence.push_back(marker(r));
                    sentence.push_back(a);
                    pad(2, 4);
                    emit();
                    pad(2, 4);
                    sentence.push_back(b);
                    sentence.push_back(marker(r));
                    pad(2, 4);
                    emit();
                }
            }
        }
    }
    for (std::size_t s = 0; s < cfg.extra_sentences; ++s) {
        for (std::size_t i = 0; i < cfg.sentence_len; ++i) sentence.push_back(filler());
        emit();
    }
    shuffle(data.corpus_lines, rng);
    return data;
}

}  // namespace bagpack
