#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bagpack/error.hpp"
#include "bagpack/features.hpp"

namespace bagpack {

// Dense real-valued row over the active column window.
struct WeightedRow {
    std::string w1, w2;
    std::vector<double> values;
};

struct WeightedMatrix {
    std::size_t b = 0;
    std::uint32_t col_begin = 0, col_end = 0;
    std::vector<WeightedRow> rows;
    std::vector<std::string> labels;

    std::size_t cols() const { return col_end - col_begin; }
};

// Per-column ln(N/df) factors; df = 0 columns keep factor 0 so the fixed
// column space survives.
struct TfidfWeights {
    std::vector<double> idf;  // size = active column count
};

// Per-column mean and population standard deviation.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> stddev;
};

namespace detail {

inline std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return ids;
}

}  // namespace detail

// Document frequencies over the selected rows only; fitting on training rows
// and applying to held-out rows keeps folds leak-free.
inline TfidfWeights fit_tfidf(const CoocMatrix& m, std::span<const std::size_t> rows) {
    if (rows.empty()) throw Error("fit_tfidf: empty row set");
    std::vector<std::size_t> df(m.cols(), 0);
    for (std::size_t r : rows)
        for (const auto& [idx, count] : m.rows.at(r).entries)
            if (count > 0) ++df[idx - m.col_begin];

    TfidfWeights w;
    w.idf.resize(m.cols(), 0.0);
    const double n = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < df.size(); ++j)
        if (df[j] > 0) w.idf[j] = std::log(n / static_cast<double>(df[j]));
    return w;
}

inline WeightedMatrix apply_tfidf(const CoocMatrix& m, const TfidfWeights& w) {
    if (w.idf.size() != m.cols()) throw Error("tfidf weights do not match matrix columns");
    WeightedMatrix out;
    out.b = m.b;
    out.col_begin = m.col_begin;
    out.col_end = m.col_end;
    out.labels = m.labels;
    out.rows.reserve(m.rows.size());
    for (const PairVector& row : m.rows) {
        WeightedRow r;
        r.w1 = row.w1;
        r.w2 = row.w2;
        r.values.assign(m.cols(), 0.0);
        for (const auto& [idx, count] : row.entries)
            r.values[idx - m.col_begin] = static_cast<double>(count) * w.idf[idx - m.col_begin];
        out.rows.push_back(std::move(r));
    }
    return out;
}

// entry(i,j) = count(i,j) * ln(N / df(j)), fitted on every row.
inline WeightedMatrix tfidf(const CoocMatrix& m) {
    if (m.rows.empty()) throw InputError("tfidf requires at least one row");
    auto rows = detail::all_rows(m.rows.size());
    return apply_tfidf(m, fit_tfidf(m, rows));
}

inline Scaler fit_scaler(const WeightedMatrix& m, std::span<const std::size_t> rows) {
    if (rows.empty()) throw Error("fit_scaler: empty row set");
    const std::size_t cols = m.cols();
    Scaler s;
    s.mean.assign(cols, 0.0);
    s.stddev.assign(cols, 0.0);
    const double n = static_cast<double>(rows.size());
    for (std::size_t r : rows) {
        const auto& v = m.rows.at(r).values;
        for (std::size_t j = 0; j < cols; ++j) s.mean[j] += v[j];
    }
    for (std::size_t j = 0; j < cols; ++j) s.mean[j] /= n;
    for (std::size_t r : rows) {
        const auto& v = m.rows.at(r).values;
        for (std::size_t j = 0; j < cols; ++j) {
            double d = v[j] - s.mean[j];
            s.stddev[j] += d * d;
        }
    }
    for (std::size_t j = 0; j < cols; ++j) s.stddev[j] = std::sqrt(s.stddev[j] / n);
    return s;
}

// Maps each feature's [mean-2*std, mean+2*std] interval to [0,1], clipping
// values outside it. Zero-variance columns map to 0.
inline WeightedMatrix apply_scaler(const WeightedMatrix& m, const Scaler& s) {
    if (s.mean.size() != m.cols() || s.stddev.size() != m.cols())
        throw InputError("scaler shape does not match matrix columns");
    WeightedMatrix out = m;
    const std::size_t cols = m.cols();
    for (WeightedRow& row : out.rows) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double sd = s.stddev[j];
            if (sd <= 0.0) {
                row.values[j] = 0.0;
                continue;
            }
            double scaled = (row.values[j] - (s.mean[j] - 2.0 * sd)) / (4.0 * sd);
            row.values[j] = std::clamp(scaled, 0.0, 1.0);
        }
    }
    return out;
}

// TF-IDF then interval scaling, both fitted on every row.
inline WeightedMatrix normalize(const CoocMatrix& m) {
    WeightedMatrix w = tfidf(m);
    auto rows = detail::all_rows(w.rows.size());
    return apply_scaler(w, fit_scaler(w, rows));
}

// Column-window restriction for already-weighted matrices; commutes with
// per-column normalization.
inline WeightedMatrix project(const WeightedMatrix& m, Condition c) {
    if (c == Condition::Full) return m;
    if (m.col_begin != 0 || m.col_end != feature_dim(m.b))
        throw Error("project requires a full-space matrix");
    WeightedMatrix out;
    out.b = m.b;
    out.labels = m.labels;
    out.col_begin = c == Condition::SinglesOnly ? 0 : static_cast<std::uint32_t>(8 * m.b);
    out.col_end = c == Condition::SinglesOnly ? static_cast<std::uint32_t>(8 * m.b)
                                              : static_cast<std::uint32_t>(20 * m.b);
    out.rows.reserve(m.rows.size());
    for (const WeightedRow& row : m.rows) {
        WeightedRow r;
        r.w1 = row.w1;
        r.w2 = row.w2;
        r.values.assign(row.values.begin() + out.col_begin, row.values.begin() + out.col_end);
        out.rows.push_back(std::move(r));
    }
    return out;
}

}  // namespace bagpack
