// bagpack command-line tool: build word-pair vectors from a corpus and
// train/evaluate linear SVMs on them.
//
// Data files go only to paths named by --out and friends; progress and
// warnings go to stderr. Exit codes: 0 success, 1 internal error, 2 invalid
// input or configuration.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bagpack/bagpack.hpp"

namespace {

using namespace bagpack;

unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

long parse_long(const std::string& s, const std::string& what) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InputError("invalid integer '" + s + "' in " + what);
    return v;
}

// Precedence: flags > key=value config file > built-in defaults. CLI11 does
// not read config files attached to subcommands, so the merge is done by hand
// at the start of each command callback.
class ConfigFile {
public:
    void attach(CLI::App* cmd) {
        cmd_ = cmd;
        cmd->add_option("--config", path_, "key=value config file; flags take precedence");
    }

    void bind_string(const std::string& key, std::string& target) {
        bind(key, [&target](const std::string& v) { target = v; });
    }

    void bind_choice(const std::string& key, std::string& target,
                     std::set<std::string> allowed) {
        bind(key, [&target, key, allowed = std::move(allowed)](const std::string& v) {
            if (!allowed.count(v))
                throw InputError("config key " + key + " has invalid value '" + v + "'");
            target = v;
        });
    }

    void bind_uint(const std::string& key, std::size_t& target) {
        bind(key, [&target, key](const std::string& v) {
            target = static_cast<std::size_t>(parse_uint(v, "config key " + key));
        });
    }

    void bind_uint64(const std::string& key, std::uint64_t& target) {
        bind(key, [&target, key](const std::string& v) {
            target = parse_uint(v, "config key " + key);
        });
    }

    void bind_int(const std::string& key, int& target) {
        bind(key, [&target, key](const std::string& v) {
            target = static_cast<int>(parse_long(v, "config key " + key));
        });
    }

    void bind_long(const std::string& key, long& target) {
        bind(key, [&target, key](const std::string& v) {
            target = parse_long(v, "config key " + key);
        });
    }

    void bind_unsigned(const std::string& key, unsigned& target) {
        bind(key, [&target, key](const std::string& v) {
            target = static_cast<unsigned>(parse_uint(v, "config key " + key));
        });
    }

    void bind_double(const std::string& key, double& target) {
        bind(key, [&target, key](const std::string& v) {
            target = parse_double(v, "config key " + key);
        });
    }

    // Applies config values for keys whose flags were not given.
    void merge() const {
        if (path_.empty()) return;
        std::string bytes = detail::read_file_bytes(path_);
        std::size_t lineno = 0;
        for (std::string_view line : detail::file_lines(bytes)) {
            ++lineno;
            if (line.empty() || line.front() == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw InputError(path_ + " line " + std::to_string(lineno) +
                                 ": expected key=value");
            std::string key(line.substr(0, eq));
            std::string value(line.substr(eq + 1));
            auto it = keys_.find(key);
            if (it == keys_.end())
                throw InputError(path_ + " line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
            if (cmd_->count("--" + key) > 0) continue;  // flag wins
            it->second(value);
        }
    }

private:
    void bind(const std::string& key, std::function<void(const std::string&)> apply) {
        keys_.emplace(key, std::move(apply));
    }

    CLI::App* cmd_ = nullptr;
    std::string path_;
    std::map<std::string, std::function<void(const std::string&)>> keys_;
};

void require_value(const char* flag, const std::string& value) {
    if (value.empty()) throw InputError(std::string(flag) + " is required");
}

Condition parse_condition(const std::string& s) {
    if (s == "singles") return Condition::SinglesOnly;
    if (s == "pair") return Condition::PairOnly;
    return Condition::Full;
}

struct WindowFlags {
    WindowConfig window;

    void attach(CLI::App* cmd, ConfigFile& cfg) {
        cmd->add_option("--single-window", window.single_side_max,
                        "context tokens on each side of a single target")
            ->capture_default_str();
        cmd->add_option("--outer-window", window.pair_outer_max,
                        "context tokens before/after a pair")
            ->capture_default_str();
        cmd->add_option("--gap", window.pair_gap_max, "max tokens between the two targets")
            ->capture_default_str();
        cmd->add_option("--max-contexts", window.max_observations,
                        "keep only the first N observations per query")
            ->capture_default_str();
        cfg.bind_int("single-window", window.single_side_max);
        cfg.bind_int("outer-window", window.pair_outer_max);
        cfg.bind_int("gap", window.pair_gap_max);
        cfg.bind_uint("max-contexts", window.max_observations);
    }
};

struct SvmFlags {
    SvmConfig svm;

    void attach(CLI::App* cmd, ConfigFile& cfg) {
        cmd->add_option("--cost", svm.cost, "soft-margin cost C")->capture_default_str();
        cmd->add_option("--epsilon", svm.epsilon, "regression tube half-width")
            ->capture_default_str();
        cmd->add_option("--tolerance", svm.tolerance, "KKT stopping tolerance")
            ->capture_default_str();
        cmd->add_option("--max-passes", svm.max_passes, "solver iteration budget")
            ->capture_default_str();
        cfg.bind_double("cost", svm.cost);
        cfg.bind_double("epsilon", svm.epsilon);
        cfg.bind_double("tolerance", svm.tolerance);
        cfg.bind_long("max-passes", svm.max_passes);
    }
};

void cmd_basis(const std::string& corpus_path, std::size_t b, const std::string& out) {
    Corpus corpus = load_corpus_file(corpus_path);
    std::cerr << "corpus: " << corpus.sentences.size() << " sentences, " << corpus.token_count
              << " tokens\n";
    FreqTable freq = count_ngrams(corpus);
    BasisSet basis = select_basis(freq, b);
    write_basis_file(out, basis);
    std::cerr << "basis: b=" << b << " (" << basis.terms().size() << " terms) -> " << out
              << "\n";
}

void cmd_vectorize(const std::string& corpus_path, const std::string& pairs_path,
                   const std::string& basis_path, const WindowConfig& window, unsigned threads,
                   const std::string& out) {
    Corpus corpus = load_corpus_file(corpus_path);
    std::vector<PairSpec> pairs = read_pairs_file(pairs_path);
    BasisSet basis = read_basis_file(basis_path);
    std::cerr << "vectorizing " << pairs.size() << " pairs over " << corpus.sentences.size()
              << " sentences (b=" << basis.b() << ", threads=" << threads << ")\n";

    std::vector<PairStats> stats;
    CoocMatrix m = build_matrix(
        corpus, pairs, basis, window, threads,
        [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }, &stats);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const PairStats& st = stats[i];
        std::cerr << "pair " << pairs[i].w1 << "/" << pairs[i].w2 << ": singles "
                  << st.singles_w1 << "/" << st.singles_w2 << ", pair fwd " << st.pair_forward
                  << " rev " << st.pair_reverse
                  << ", seen_together=" << (seen_together(m.rows[i], m.b) ? "true" : "false")
                  << (st.truncated ? " [capped]" : "") << "\n";
    }
    write_matrix_file(out, m);
    std::cerr << "matrix: " << m.rows.size() << " rows x " << m.cols() << " columns -> " << out
              << "\n";
}

void cmd_normalize(const std::string& matrix_path, const std::string& out,
                   const std::string& scaler_out) {
    MatrixFile mf = read_matrix_file(matrix_path);
    CoocMatrix counts = to_counts(mf, matrix_path);
    if (counts.rows.empty()) throw InputError("matrix " + matrix_path + " has no rows");
    WeightedMatrix w = tfidf(counts);
    std::vector<std::size_t> all(w.rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    Scaler scaler = fit_scaler(w, all);
    WeightedMatrix scaled = apply_scaler(w, scaler);
    write_matrix_file(out, scaled);
    std::cerr << "normalized " << scaled.rows.size() << " rows -> " << out << "\n";
    if (!scaler_out.empty()) {
        write_scaler_file(scaler_out, scaler, w.col_begin);
        std::cerr << "scaler -> " << scaler_out << "\n";
    }
}

void cmd_eval(const std::string& matrix_path, const std::string& condition,
              const std::string& norm, const std::string& task, std::string metric, int folds,
              std::uint64_t seed, const SvmConfig& svm, const std::string& out) {
    MatrixFile mf = read_matrix_file(matrix_path);
    CoocMatrix counts = to_counts(mf, matrix_path);
    CoocMatrix projected = project(counts, parse_condition(condition));

    CrossValidateOptions opt;
    opt.task = task == "regress" ? Task::Regress : Task::Classify;
    if (metric.empty()) metric = opt.task == Task::Regress ? "corr" : "accuracy";
    if (metric != "accuracy" && metric != "corr" && metric != "mse")
        throw InputError("unknown metric '" + metric + "'");
    opt.metric = metric == "accuracy" ? Metric::Accuracy
                 : metric == "corr"   ? Metric::Correlation
                                      : Metric::Mse;
    opt.k = folds;
    opt.seed = seed;
    opt.norm = norm == "paper" ? NormMode::WholeMatrixFit : NormMode::TrainFoldFit;
    opt.svm = svm;

    EvalReport report = cross_validate(projected, opt);
    std::string context = "bagpack eval condition=" + condition + " norm=" + norm +
                          " task=" + task + " metric=" + metric + " k=" +
                          std::to_string(folds) + " seed=" + std::to_string(seed) +
                          " cost=" + format_double(svm.cost) +
                          " epsilon=" + format_double(svm.epsilon);
    write_report_file(out, context, report);
    std::cerr << "eval " << condition << "/" << norm << ": " << metric_name(report.metric)
              << " mean " << format_double(report.mean) << " ci [" << format_double(report.ci_lo)
              << ", " << format_double(report.ci_hi) << "] -> " << out << "\n";
}

void cmd_train(const std::string& matrix_path, const std::string& condition,
               const std::string& task, const SvmConfig& svm, const std::string& out) {
    MatrixFile mf = read_matrix_file(matrix_path);
    WeightedMatrix w = project(to_weighted(mf), parse_condition(condition));
    std::vector<Row> rows;
    rows.reserve(w.rows.size());
    for (const WeightedRow& r : w.rows) rows.emplace_back(r.values);
    for (std::size_t i = 0; i < w.labels.size(); ++i)
        if (w.labels[i].empty())
            throw InputError("row " + std::to_string(i) + " is unlabeled; training needs labels");

    Model model;
    if (task == "regress") {
        std::vector<double> y;
        y.reserve(w.labels.size());
        for (std::size_t i = 0; i < w.labels.size(); ++i)
            y.push_back(parse_double(w.labels[i], "label of row " + std::to_string(i)));
        model = train_regressor(rows, y, svm);
    } else {
        model = train_classifier(rows, w.labels, svm);
    }
    write_model_file(out, model);
    std::cerr << "model: " << (task == "regress" ? "regressor" : "classifier") << " dim "
              << model.dim << " -> " << out << "\n";
}

void cmd_predict(const std::string& matrix_path, const std::string& model_path,
                 const std::string& out) {
    Model model = read_model_file(model_path);
    MatrixFile mf = read_matrix_file(matrix_path);
    WeightedMatrix full = to_weighted(mf);

    Condition cond;
    if (model.dim == feature_dim(mf.b))
        cond = Condition::Full;
    else if (model.dim == singles_dim(mf.b))
        cond = Condition::SinglesOnly;
    else if (model.dim == 12 * mf.b)
        cond = Condition::PairOnly;
    else
        throw InputError("model dimension " + std::to_string(model.dim) +
                         " does not match any condition of a b=" + std::to_string(mf.b) +
                         " matrix");
    WeightedMatrix w = project(full, cond);

    std::ofstream os = detail::open_output(out);
    if (model.kind == ModelKind::Classifier) {
        os << "# classes=";
        for (std::size_t k = 0; k < model.classes.size(); ++k)
            os << (k ? "," : "") << model.classes[k];
        os << '\n';
        for (const WeightedRow& r : w.rows) {
            std::vector<double> m = decision_margins(model, r.values);
            os << r.w1 << '\t' << r.w2 << '\t' << predict_label(model, r.values);
            for (double v : m) os << '\t' << format_double(v);
            os << '\n';
        }
    } else {
        for (const WeightedRow& r : w.rows)
            os << r.w1 << '\t' << r.w2 << '\t' << format_double(predict_value(model, r.values))
               << '\n';
    }
    detail::finish_output(os, out);
    std::cerr << "predictions for " << w.rows.size() << " rows -> " << out << "\n";
}

void cmd_synth(const SynthConfig& cfg, const std::string& corpus_out,
               const std::string& pairs_out) {
    SynthData data = synthesize(cfg);
    std::ofstream cs = detail::open_output(corpus_out);
    for (const std::string& line : data.corpus_lines) cs << line << '\n';
    detail::finish_output(cs, corpus_out);
    std::ofstream ps = detail::open_output(pairs_out);
    ps << "# synthetic planted-relation pairs (seed " << cfg.seed << ")\n";
    for (const PairSpec& p : data.pairs) ps << p.w1 << '\t' << p.w2 << '\t' << p.label << '\n';
    detail::finish_output(ps, pairs_out);
    std::cerr << "synth: " << data.corpus_lines.size() << " sentences, " << data.pairs.size()
              << " pairs -> " << corpus_out << ", " << pairs_out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bagpack: word-pair vectors from plain-text corpora, with linear SVM tasks"};
    app.require_subcommand(1);

    // basis
    auto* basis = app.add_subcommand("basis", "select the 2b most frequent basis terms");
    ConfigFile basis_cfg;
    basis_cfg.attach(basis);
    std::string basis_corpus, basis_out;
    std::size_t basis_b = 1500;
    basis->add_option("--corpus", basis_corpus, "corpus file (one sentence per line)");
    basis->add_option("-b,--basis-size", basis_b, "unigram/bigram count b")
        ->capture_default_str();
    basis->add_option("--out", basis_out, "basis TSV output");
    basis_cfg.bind_string("corpus", basis_corpus);
    basis_cfg.bind_uint("basis-size", basis_b);
    basis_cfg.bind_string("out", basis_out);
    basis->callback([&] {
        basis_cfg.merge();
        require_value("--corpus", basis_corpus);
        require_value("--out", basis_out);
        cmd_basis(basis_corpus, basis_b, basis_out);
    });

    // vectorize
    auto* vec = app.add_subcommand("vectorize", "build the pair/feature count matrix");
    ConfigFile vec_cfg;
    vec_cfg.attach(vec);
    std::string vec_corpus, vec_pairs, vec_basis, vec_out;
    WindowFlags vec_window;
    unsigned vec_threads = default_threads();
    vec->add_option("--corpus", vec_corpus, "corpus file");
    vec->add_option("--pairs", vec_pairs, "pairs TSV (w1, w2, optional label)");
    vec->add_option("--basis", vec_basis, "basis TSV from `basis`");
    vec_window.attach(vec, vec_cfg);
    vec->add_option("--threads", vec_threads, "worker threads for row construction")
        ->envname("BAGPACK_THREADS")
        ->capture_default_str();
    vec->add_option("--out", vec_out, "matrix output (BPK1)");
    vec_cfg.bind_string("corpus", vec_corpus);
    vec_cfg.bind_string("pairs", vec_pairs);
    vec_cfg.bind_string("basis", vec_basis);
    vec_cfg.bind_unsigned("threads", vec_threads);
    vec_cfg.bind_string("out", vec_out);
    vec->callback([&] {
        vec_cfg.merge();
        require_value("--corpus", vec_corpus);
        require_value("--pairs", vec_pairs);
        require_value("--basis", vec_basis);
        require_value("--out", vec_out);
        if (vec_threads < 1) throw InputError("--threads must be >= 1");
        cmd_vectorize(vec_corpus, vec_pairs, vec_basis, vec_window.window, vec_threads, vec_out);
    });

    // normalize
    auto* norm = app.add_subcommand("normalize", "TF-IDF weight + scale a count matrix");
    ConfigFile norm_cfg;
    norm_cfg.attach(norm);
    std::string norm_matrix, norm_out, norm_scaler;
    norm->add_option("--matrix", norm_matrix, "count matrix (BPK1)");
    norm->add_option("--out", norm_out, "normalized matrix output");
    norm->add_option("--save-scaler", norm_scaler, "also write the fitted scaler TSV");
    norm_cfg.bind_string("matrix", norm_matrix);
    norm_cfg.bind_string("out", norm_out);
    norm_cfg.bind_string("save-scaler", norm_scaler);
    norm->callback([&] {
        norm_cfg.merge();
        require_value("--matrix", norm_matrix);
        require_value("--out", norm_out);
        cmd_normalize(norm_matrix, norm_out, norm_scaler);
    });

    // eval
    auto* ev = app.add_subcommand("eval", "k-fold cross-validated task evaluation");
    ConfigFile ev_cfg;
    ev_cfg.attach(ev);
    std::string ev_matrix, ev_out, ev_condition = "full", ev_norm = "trainfit",
                           ev_task = "classify", ev_metric;
    int ev_folds = 10;
    std::uint64_t ev_seed = 0;
    SvmFlags ev_svm;
    ev->add_option("--matrix", ev_matrix, "labeled count matrix (BPK1)");
    ev->add_option("--condition", ev_condition, "feature blocks to use")
        ->check(CLI::IsMember({"singles", "pair", "full"}))
        ->capture_default_str();
    ev->add_option("--norm", ev_norm, "normalization fit: per-fold or whole matrix")
        ->check(CLI::IsMember({"trainfit", "paper"}))
        ->capture_default_str();
    ev->add_option("--task", ev_task, "learning task")
        ->check(CLI::IsMember({"classify", "regress"}))
        ->capture_default_str();
    ev->add_option("--metric", ev_metric, "accuracy|corr|mse (default by task)");
    ev->add_option("--folds", ev_folds, "fold count k")->capture_default_str();
    ev->add_option("--seed", ev_seed, "fold shuffle seed")->capture_default_str();
    ev_svm.attach(ev, ev_cfg);
    ev->add_option("--out", ev_out, "report TSV output");
    ev_cfg.bind_string("matrix", ev_matrix);
    ev_cfg.bind_choice("condition", ev_condition, {"singles", "pair", "full"});
    ev_cfg.bind_choice("norm", ev_norm, {"trainfit", "paper"});
    ev_cfg.bind_choice("task", ev_task, {"classify", "regress"});
    ev_cfg.bind_choice("metric", ev_metric, {"accuracy", "corr", "mse"});
    ev_cfg.bind_int("folds", ev_folds);
    ev_cfg.bind_uint64("seed", ev_seed);
    ev_cfg.bind_string("out", ev_out);
    ev->callback([&] {
        ev_cfg.merge();
        require_value("--matrix", ev_matrix);
        require_value("--out", ev_out);
        cmd_eval(ev_matrix, ev_condition, ev_norm, ev_task, ev_metric, ev_folds, ev_seed,
                 ev_svm.svm, ev_out);
    });

    // train
    auto* tr = app.add_subcommand("train", "train a model on a (normalized) matrix");
    ConfigFile tr_cfg;
    tr_cfg.attach(tr);
    std::string tr_matrix, tr_out, tr_condition = "full", tr_task = "classify";
    SvmFlags tr_svm;
    tr->add_option("--matrix", tr_matrix, "labeled matrix (BPK1, normalized)");
    tr->add_option("--condition", tr_condition, "feature blocks to use")
        ->check(CLI::IsMember({"singles", "pair", "full"}))
        ->capture_default_str();
    tr->add_option("--task", tr_task, "learning task")
        ->check(CLI::IsMember({"classify", "regress"}))
        ->capture_default_str();
    tr_svm.attach(tr, tr_cfg);
    tr->add_option("--out", tr_out, "model output (BPKM1)");
    tr_cfg.bind_string("matrix", tr_matrix);
    tr_cfg.bind_choice("condition", tr_condition, {"singles", "pair", "full"});
    tr_cfg.bind_choice("task", tr_task, {"classify", "regress"});
    tr_cfg.bind_string("out", tr_out);
    tr->callback([&] {
        tr_cfg.merge();
        require_value("--matrix", tr_matrix);
        require_value("--out", tr_out);
        cmd_train(tr_matrix, tr_condition, tr_task, tr_svm.svm, tr_out);
    });

    // predict
    auto* pr = app.add_subcommand("predict",
                                  "apply a model; margins support forced-choice ranking");
    ConfigFile pr_cfg;
    pr_cfg.attach(pr);
    std::string pr_matrix, pr_model, pr_out;
    pr->add_option("--matrix", pr_matrix, "matrix of rows to score (BPK1)");
    pr->add_option("--model", pr_model, "model file (BPKM1)");
    pr->add_option("--out", pr_out, "predictions TSV output");
    pr_cfg.bind_string("matrix", pr_matrix);
    pr_cfg.bind_string("model", pr_model);
    pr_cfg.bind_string("out", pr_out);
    pr->callback([&] {
        pr_cfg.merge();
        require_value("--matrix", pr_matrix);
        require_value("--model", pr_model);
        require_value("--out", pr_out);
        cmd_predict(pr_matrix, pr_model, pr_out);
    });

    // synth
    auto* sy = app.add_subcommand("synth", "generate a planted-relation corpus + pairs file");
    ConfigFile sy_cfg;
    sy_cfg.attach(sy);
    std::string sy_corpus, sy_pairs, sy_mode = "pair";
    SynthConfig sy_opts;
    sy->add_option("--corpus", sy_corpus, "corpus output path");
    sy->add_option("--pairs", sy_pairs, "pairs output path");
    sy->add_option("--relations", sy_opts.relations, "number of relations")
        ->capture_default_str();
    sy->add_option("--pairs-per-relation", sy_opts.pairs_per_relation, "pairs per relation")
        ->capture_default_str();
    sy->add_option("--fillers", sy_opts.fillers, "filler vocabulary size")
        ->capture_default_str();
    sy->add_option("--markers", sy_opts.markers_per_relation, "marker tokens per relation")
        ->capture_default_str();
    sy->add_option("--occurrences", sy_opts.occurrences, "planted sentences per pair")
        ->capture_default_str();
    sy->add_option("--extra-sentences", sy_opts.extra_sentences, "filler-only sentences")
        ->capture_default_str();
    sy->add_option("--sentence-length", sy_opts.sentence_len, "tokens per filler sentence")
        ->capture_default_str();
    sy->add_option("--mode", sy_mode, "plant signal in pair or single contexts")
        ->check(CLI::IsMember({"pair", "single"}))
        ->capture_default_str();
    sy->add_option("--seed", sy_opts.seed, "generator seed")->capture_default_str();
    sy_cfg.bind_string("corpus", sy_corpus);
    sy_cfg.bind_string("pairs", sy_pairs);
    sy_cfg.bind_uint("relations", sy_opts.relations);
    sy_cfg.bind_uint("pairs-per-relation", sy_opts.pairs_per_relation);
    sy_cfg.bind_uint("fillers", sy_opts.fillers);
    sy_cfg.bind_uint("markers", sy_opts.markers_per_relation);
    sy_cfg.bind_uint("occurrences", sy_opts.occurrences);
    sy_cfg.bind_uint("extra-sentences", sy_opts.extra_sentences);
    sy_cfg.bind_uint("sentence-length", sy_opts.sentence_len);
    sy_cfg.bind_choice("mode", sy_mode, {"pair", "single"});
    sy_cfg.bind_uint64("seed", sy_opts.seed);
    sy->callback([&] {
        sy_cfg.merge();
        require_value("--corpus", sy_corpus);
        require_value("--pairs", sy_pairs);
        sy_opts.mode = sy_mode == "single" ? SynthConfig::Mode::SingleContexts
                                           : SynthConfig::Mode::PairContexts;
        cmd_synth(sy_opts, sy_corpus, sy_pairs);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const bagpack::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
