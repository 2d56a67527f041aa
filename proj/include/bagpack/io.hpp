#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bagpack/corpus.hpp"
#include "bagpack/error.hpp"
#include "bagpack/eval.hpp"
#include "bagpack/features.hpp"
#include "bagpack/pipeline.hpp"
#include "bagpack/svm.hpp"
#include "bagpack/util.hpp"

namespace bagpack {

namespace detail {

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

inline void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error("write failed for " + path);
}

// Splits file bytes into lines, dropping a trailing CR per line. The views
// alias `bytes`, so the storage must outlive them; the deleted overload stops
// calls on temporaries.
std::vector<std::string_view> file_lines(std::string&&) = delete;

inline std::vector<std::string_view> file_lines(std::string_view bytes) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= bytes.size(); ++i) {
        if (i != bytes.size() && bytes[i] != '\n') continue;
        if (i == bytes.size() && start == i) break;  // no final empty line
        std::string_view line = bytes.substr(start, i - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = i + 1;
    }
    return lines;
}

inline std::string fold_lower_copy(std::string_view s) {
    std::string out(s);
    fold_ascii_lower(out);
    return out;
}

inline bool has_space(std::string_view s) {
    return s.find_first_of(" \t") != std::string_view::npos;
}

}  // namespace detail

inline Corpus load_corpus_file(const std::string& path) {
    std::string bytes = detail::read_file_bytes(path);
    return load_corpus(std::string_view(bytes));
}

// Pairs file: one pair per row, `w1<TAB>w2[<TAB>label]`, '#' comments.
// Words are folded to lowercase to match corpus ingestion.
inline std::vector<PairSpec> read_pairs_file(const std::string& path) {
    std::string bytes = detail::read_file_bytes(path);
    std::vector<PairSpec> pairs;
    std::size_t lineno = 0;
    for (std::string_view line : detail::file_lines(bytes)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        auto where = [&] { return path + " line " + std::to_string(lineno); };
        auto fields = split_on(line, '\t');
        if (fields.size() != 2 && fields.size() != 3)
            throw InputError("malformed pair row (want 2 or 3 tab-separated fields) at " +
                             where());
        if (fields[0].empty() || fields[1].empty() || detail::has_space(fields[0]) ||
            detail::has_space(fields[1]))
            throw InputError("malformed pair words at " + where());
        PairSpec p;
        p.w1 = detail::fold_lower_copy(fields[0]);
        p.w2 = detail::fold_lower_copy(fields[1]);
        if (p.w1 == p.w2)
            throw InputError("invalid pair (" + p.w1 + ", " + p.w2 + ") at " + where());
        if (fields.size() == 3) {
            if (fields[2].empty()) throw InputError("empty label at " + where());
            p.label = std::string(fields[2]);
        }
        pairs.push_back(std::move(p));
    }
    if (pairs.empty()) throw InputError("no pairs in " + path);
    return pairs;
}

// Basis file: `rank<TAB>kind<TAB>term<TAB>count`, kind U or B, bigram terms
// written as `tok1 tok2`.
inline void write_basis_file(const std::string& path, const BasisSet& basis) {
    std::ofstream out = detail::open_output(path);
    for (const BasisTerm& t : basis.terms()) {
        out << t.rank << '\t' << (t.kind == TermKind::Unigram ? 'U' : 'B') << '\t' << t.first;
        if (t.kind == TermKind::Bigram) out << ' ' << t.second;
        out << '\t' << t.count << '\n';
    }
    detail::finish_output(out, path);
}

inline BasisSet read_basis_file(const std::string& path) {
    std::string bytes = detail::read_file_bytes(path);
    auto lines = detail::file_lines(bytes);
    if (lines.empty() || lines.size() % 2 != 0)
        throw InputError("basis file " + path + " must hold 2b lines");
    std::vector<BasisTerm> terms;
    terms.reserve(lines.size());
    std::size_t lineno = 0;
    for (std::string_view line : lines) {
        ++lineno;
        auto where = [&] { return path + " line " + std::to_string(lineno); };
        auto fields = split_on(line, '\t');
        if (fields.size() != 4) throw InputError("malformed basis row at " + where());
        BasisTerm t;
        t.rank = static_cast<std::uint32_t>(parse_uint(fields[0], where()));
        if (fields[1] == "U")
            t.kind = TermKind::Unigram;
        else if (fields[1] == "B")
            t.kind = TermKind::Bigram;
        else
            throw InputError("basis kind must be U or B at " + where());
        auto toks = split_on(fields[2], ' ');
        if (t.kind == TermKind::Unigram && toks.size() == 1 && !toks[0].empty()) {
            t.first = std::string(toks[0]);
        } else if (t.kind == TermKind::Bigram && toks.size() == 2 && !toks[0].empty() &&
                   !toks[1].empty()) {
            t.first = std::string(toks[0]);
            t.second = std::string(toks[1]);
        } else {
            throw InputError("malformed basis term at " + where());
        }
        t.count = parse_uint(fields[3], where());
        terms.push_back(std::move(t));
    }
    const std::size_t b = terms.size() / 2;
    return BasisSet(b, std::move(terms));
}

// Matrix file: header `BPK1<TAB>b=<b><TAB>rows=<n>`, then rows of
// `w1<TAB>w2<TAB>label<TAB>idx:value,...` with strictly ascending indices and
// `-` for a missing label. Counts are written base-10; weighted matrices use
// shortest round-trip decimals.
struct MatrixFile {
    std::size_t b = 0;
    std::vector<PairSpec> pairs;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> entries;
    bool integral = true;
};

inline void write_matrix_file(const std::string& path, const CoocMatrix& m) {
    std::ofstream out = detail::open_output(path);
    out << "BPK1\tb=" << m.b << "\trows=" << m.rows.size() << '\n';
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        const PairVector& row = m.rows[i];
        out << row.w1 << '\t' << row.w2 << '\t'
            << (m.labels[i].empty() ? "-" : m.labels[i]) << '\t';
        bool first = true;
        for (const auto& [idx, count] : row.entries) {
            if (!first) out << ',';
            out << idx << ':' << count;
            first = false;
        }
        out << '\n';
    }
    detail::finish_output(out, path);
}

inline void write_matrix_file(const std::string& path, const WeightedMatrix& m) {
    std::ofstream out = detail::open_output(path);
    out << "BPK1\tb=" << m.b << "\trows=" << m.rows.size() << '\n';
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        const WeightedRow& row = m.rows[i];
        out << row.w1 << '\t' << row.w2 << '\t'
            << (m.labels[i].empty() ? "-" : m.labels[i]) << '\t';
        bool first = true;
        for (std::size_t j = 0; j < row.values.size(); ++j) {
            if (row.values[j] == 0.0) continue;
            if (!first) out << ',';
            out << (m.col_begin + j) << ':' << format_double(row.values[j]);
            first = false;
        }
        out << '\n';
    }
    detail::finish_output(out, path);
}

inline MatrixFile read_matrix_file(const std::string& path) {
    std::string bytes = detail::read_file_bytes(path);
    auto lines = detail::file_lines(bytes);
    if (lines.empty()) throw InputError("empty matrix file " + path);
    auto header = split_on(lines[0], '\t');
    if (header.size() != 3 || header[0] != "BPK1" || !header[1].starts_with("b=") ||
        !header[2].starts_with("rows="))
        throw InputError("bad matrix header in " + path);
    MatrixFile mf;
    mf.b = parse_uint(header[1].substr(2), path + " header");
    std::size_t nrows = parse_uint(header[2].substr(5), path + " header");
    if (mf.b < 1) throw InputError("matrix b must be >= 1 in " + path);
    if (lines.size() - 1 != nrows)
        throw InputError("matrix row count mismatch in " + path + ": header says " +
                         std::to_string(nrows) + ", file has " +
                         std::to_string(lines.size() - 1));
    const std::uint32_t dim = static_cast<std::uint32_t>(feature_dim(mf.b));
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto where = [&] { return path + " line " + std::to_string(r + 1); };
        auto fields = split_on(lines[r], '\t');
        if (fields.size() != 4) throw InputError("malformed matrix row at " + where());
        PairSpec p;
        p.w1 = std::string(fields[0]);
        p.w2 = std::string(fields[1]);
        p.label = fields[2] == "-" ? std::string() : std::string(fields[2]);
        std::vector<std::pair<std::uint32_t, double>> row;
        if (!fields[3].empty()) {
            for (std::string_view cell : split_on(fields[3], ',')) {
                auto colon = cell.find(':');
                if (colon == std::string_view::npos)
                    throw InputError("malformed entry '" + std::string(cell) + "' at " + where());
                auto idx =
                    static_cast<std::uint32_t>(parse_uint(cell.substr(0, colon), where()));
                double value = parse_double(cell.substr(colon + 1), where());
                if (idx >= dim) throw InputError("feature index out of range at " + where());
                if (!row.empty() && idx <= row.back().first)
                    throw InputError("feature indices not ascending at " + where());
                if (value != std::floor(value)) mf.integral = false;
                row.emplace_back(idx, value);
            }
        }
        mf.pairs.push_back(std::move(p));
        mf.entries.push_back(std::move(row));
    }
    return mf;
}

// Count-matrix view of a parsed file; rejects non-integral or non-positive
// stored values.
inline CoocMatrix to_counts(const MatrixFile& mf, const std::string& path) {
    if (!mf.integral)
        throw InputError(path + " holds real values; a count matrix is required here");
    CoocMatrix m;
    m.b = mf.b;
    m.col_begin = 0;
    m.col_end = static_cast<std::uint32_t>(feature_dim(mf.b));
    for (std::size_t i = 0; i < mf.pairs.size(); ++i) {
        PairVector row;
        row.w1 = mf.pairs[i].w1;
        row.w2 = mf.pairs[i].w2;
        for (const auto& [idx, value] : mf.entries[i]) {
            if (value < 1.0)
                throw InputError(path + ": count entries must be positive integers");
            row.entries.emplace(idx, static_cast<std::uint32_t>(value));
        }
        m.rows.push_back(std::move(row));
        m.labels.push_back(mf.pairs[i].label);
    }
    return m;
}

// Dense full-space view of a parsed file (counts or weights).
inline WeightedMatrix to_weighted(const MatrixFile& mf) {
    WeightedMatrix m;
    m.b = mf.b;
    m.col_begin = 0;
    m.col_end = static_cast<std::uint32_t>(feature_dim(mf.b));
    for (std::size_t i = 0; i < mf.pairs.size(); ++i) {
        WeightedRow row;
        row.w1 = mf.pairs[i].w1;
        row.w2 = mf.pairs[i].w2;
        row.values.assign(m.cols(), 0.0);
        for (const auto& [idx, value] : mf.entries[i]) row.values[idx] = value;
        m.rows.push_back(std::move(row));
        m.labels.push_back(mf.pairs[i].label);
    }
    return m;
}

// Scaler file: `col<TAB>mean<TAB>std` per active column, full precision.
inline void write_scaler_file(const std::string& path, const Scaler& s,
                              std::uint32_t col_begin) {
    std::ofstream out = detail::open_output(path);
    for (std::size_t j = 0; j < s.mean.size(); ++j)
        out << (col_begin + j) << '\t' << format_double(s.mean[j]) << '\t'
            << format_double(s.stddev[j]) << '\n';
    detail::finish_output(out, path);
}

struct ScalerFile {
    std::uint32_t col_begin = 0;
    Scaler scaler;
};

inline ScalerFile read_scaler_file(const std::string& path) {
    std::string bytes = detail::read_file_bytes(path);
    auto lines = detail::file_lines(bytes);
    if (lines.empty()) throw InputError("empty scaler file " + path);
    ScalerFile sf;
    std::size_t lineno = 0;
    for (std::string_view line : lines) {
        ++lineno;
        auto where = [&] { return path + " line " + std::to_string(lineno); };
        auto fields = split_on(line, '\t');
        if (fields.size() != 3) throw InputError("malformed scaler row at " + where());
        auto col = static_cast<std::uint32_t>(parse_uint(fields[0], where()));
        if (lineno == 1)
            sf.col_begin = col;
        else if (col != sf.col_begin + lineno - 1)
            throw InputError("scaler columns not contiguous at " + where());
        sf.scaler.mean.push_back(parse_double(fields[1], where()));
        sf.scaler.stddev.push_back(parse_double(fields[2], where()));
    }
    return sf;
}

// Model file: header `BPKM1<TAB>kind<TAB>dim<TAB>classes=<comma list or ->`,
// then per separator a `bias<TAB>value` line followed by `w<TAB>idx<TAB>value`
// lines for nonzero weights. Binary classifiers and regressors store one
// separator; K-class models store K in class order.
inline void write_model_file(const std::string& path, const Model& model) {
    std::ofstream out = detail::open_output(path);
    out << "BPKM1\t" << (model.kind == ModelKind::Classifier ? "classifier" : "regressor")
        << '\t' << model.dim << "\tclasses=";
    if (model.classes.empty()) {
        out << '-';
    } else {
        for (std::size_t i = 0; i < model.classes.size(); ++i) {
            const std::string& c = model.classes[i];
            if (c.find_first_of(",\t\n") != std::string::npos)
                throw InputError("class label '" + c + "' cannot be serialized");
            out << (i ? "," : "") << c;
        }
    }
    out << '\n';
    for (const Separator& s : model.separators) {
        out << "bias\t" << format_double(s.bias) << '\n';
        for (std::size_t j = 0; j < s.weights.size(); ++j)
            if (s.weights[j] != 0.0)
                out << "w\t" << j << '\t' << format_double(s.weights[j]) << '\n';
    }
    detail::finish_output(out, path);
}

inline Model read_model_file(const std::string& path) {
    std::string bytes = detail::read_file_bytes(path);
    auto lines = detail::file_lines(bytes);
    if (lines.empty()) throw InputError("empty model file " + path);
    auto header = split_on(lines[0], '\t');
    if (header.size() != 4 || header[0] != "BPKM1" || !header[3].starts_with("classes="))
        throw InputError("bad model header in " + path);
    Model model;
    if (header[1] == "classifier")
        model.kind = ModelKind::Classifier;
    else if (header[1] == "regressor")
        model.kind = ModelKind::Regressor;
    else
        throw InputError("unknown model kind in " + path);
    model.dim = parse_uint(header[2], path + " header");
    std::string_view cls = header[3].substr(8);
    if (cls != "-")
        for (std::string_view c : split_on(cls, ','))
            model.classes.push_back(std::string(c));
    if (model.kind == ModelKind::Classifier && model.classes.size() < 2)
        throw InputError("classifier model needs >= 2 classes in " + path);
    if (model.kind == ModelKind::Regressor && !model.classes.empty())
        throw InputError("regressor model cannot carry classes in " + path);

    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto where = [&] { return path + " line " + std::to_string(r + 1); };
        auto fields = split_on(lines[r], '\t');
        if (fields[0] == "bias") {
            if (fields.size() != 2) throw InputError("malformed bias row at " + where());
            Separator s;
            s.bias = parse_double(fields[1], where());
            s.weights.assign(model.dim, 0.0);
            model.separators.push_back(std::move(s));
        } else if (fields[0] == "w") {
            if (fields.size() != 3 || model.separators.empty())
                throw InputError("malformed weight row at " + where());
            auto idx = parse_uint(fields[1], where());
            if (idx >= model.dim) throw InputError("weight index out of range at " + where());
            model.separators.back().weights[idx] = parse_double(fields[2], where());
        } else {
            throw InputError("unknown model row at " + where());
        }
    }
    std::size_t want = model.kind == ModelKind::Regressor ? 1
                       : model.classes.size() == 2        ? 1
                                                          : model.classes.size();
    if (model.separators.size() != want)
        throw InputError("model separator count mismatch in " + path);
    return model;
}

// Report: a '#' context line, `fold<TAB>metric<TAB>value` rows, then
// `summary<TAB>mean<TAB>std<TAB>ci_lo<TAB>ci_hi`.
inline void write_report_file(const std::string& path, const std::string& context,
                              const EvalReport& report) {
    std::ofstream out = detail::open_output(path);
    out << "# " << context << '\n';
    for (std::size_t f = 0; f < report.fold_values.size(); ++f)
        out << f << '\t' << metric_name(report.metric) << '\t'
            << format_double(report.fold_values[f]) << '\n';
    out << "summary\t" << format_double(report.mean) << '\t' << format_double(report.stddev)
        << '\t' << format_double(report.ci_lo) << '\t' << format_double(report.ci_hi) << '\n';
    detail::finish_output(out, path);
}

}  // namespace bagpack
