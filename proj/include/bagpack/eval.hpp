#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bagpack/error.hpp"
#include "bagpack/pipeline.hpp"
#include "bagpack/svm.hpp"
#include "bagpack/util.hpp"

namespace bagpack {

enum class Metric { Accuracy, Correlation, Mse };
enum class Task { Classify, Regress };
enum class NormMode { TrainFoldFit, WholeMatrixFit };

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::Accuracy: return "accuracy";
        case Metric::Correlation: return "corr";
        default: return "mse";
    }
}

struct EvalReport {
    Metric metric = Metric::Accuracy;
    std::vector<double> fold_values;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation over folds
    double ci_lo = 0.0, ci_hi = 0.0;
};

namespace detail {

// Regularized incomplete beta via Lentz's continued fraction.
inline double betacf(double a, double b, double x) {
    const int max_iter = 300;
    const double eps = 3e-16, tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int it = 1; it <= max_iter; ++it) {
        int m2 = 2 * it;
        double aa = it * (b - it) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + it) * (qab + it) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log1p(-x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

inline double student_t_cdf(double t, double nu) {
    double ib = incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
    return t >= 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

}  // namespace detail

// Upper-tail Student-t quantile by bisection on the CDF; p in (0.5, 1).
inline double student_t_quantile(double p, double nu) {
    if (!(p > 0.5 && p < 1.0) || nu <= 0.0) throw Error("t quantile arguments out of range");
    double hi = 1.0;
    while (detail::student_t_cdf(hi, nu) < p) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (detail::student_t_cdf(mid, nu) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Seeded round-robin fold assignment; fold sizes differ by at most one.
inline std::vector<int> make_folds(std::size_t n, int k, std::uint64_t seed) {
    if (k < 2 || static_cast<std::size_t>(k) > n)
        throw InputError("fold count k must satisfy 2 <= k <= n (n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ")");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    shuffle(order, rng);
    std::vector<int> fold(n);
    for (std::size_t t = 0; t < n; ++t) fold[order[t]] = static_cast<int>(t % k);
    return fold;
}

// Stratified variant: shuffles within each class and deals members through a
// cursor shared across classes, so both global and per-class fold sizes
// differ by at most one.
inline std::vector<int> make_stratified_folds(const std::vector<std::string>& labels, int k,
                                              std::uint64_t seed) {
    const std::size_t n = labels.size();
    if (k < 2 || static_cast<std::size_t>(k) > n)
        throw InputError("fold count k must satisfy 2 <= k <= n (n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ")");
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
    Rng rng(seed);
    std::vector<int> fold(n);
    std::size_t cursor = 0;
    for (auto& [cls, ids] : groups) {
        shuffle(ids, rng);
        for (std::size_t id : ids) fold[id] = static_cast<int>(cursor++ % k);
    }
    return fold;
}

inline double accuracy_metric(const std::vector<std::string>& pred,
                              const std::vector<std::string>& gold) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] == gold[i]) ++hit;
    return pred.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(pred.size());
}

// Pearson correlation; 0 when undefined (fewer than two points or zero
// variance on either side).
inline double pearson_metric(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (n < 2) return 0.0;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

inline double mse_metric(const std::vector<double>& pred, const std::vector<double>& gold) {
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) s += (pred[i] - gold[i]) * (pred[i] - gold[i]);
    return pred.empty() ? 0.0 : s / static_cast<double>(pred.size());
}

// Mean, sample std and the t-based 95% interval over fold metrics.
inline EvalReport summarize_folds(Metric metric, std::vector<double> fold_values) {
    if (fold_values.size() < 2) throw Error("summarize_folds needs >= 2 folds");
    EvalReport r;
    r.metric = metric;
    const double k = static_cast<double>(fold_values.size());
    double mean = 0.0;
    for (double v : fold_values) mean += v;
    mean /= k;
    double ss = 0.0;
    for (double v : fold_values) ss += (v - mean) * (v - mean);
    r.mean = mean;
    r.stddev = std::sqrt(ss / (k - 1.0));
    double half = student_t_quantile(0.975, k - 1.0) * r.stddev / std::sqrt(k);
    r.ci_lo = mean - half;
    r.ci_hi = mean + half;
    r.fold_values = std::move(fold_values);
    return r;
}

struct CrossValidateOptions {
    Task task = Task::Classify;
    Metric metric = Metric::Accuracy;
    int k = 10;
    std::uint64_t seed = 0;
    NormMode norm = NormMode::TrainFoldFit;
    SvmConfig svm;
};

namespace detail {

inline std::vector<Row> rows_view(const WeightedMatrix& m, const std::vector<std::size_t>& ids) {
    std::vector<Row> out;
    out.reserve(ids.size());
    for (std::size_t id : ids) out.emplace_back(m.rows[id].values);
    return out;
}

}  // namespace detail

// Seeded k-fold cross-validation over a (projected) count matrix. Each fold
// normalizes per the leakage mode, trains per the task, and scores the
// held-out rows; the report aggregates the fold distribution.
inline EvalReport cross_validate(const CoocMatrix& m, const CrossValidateOptions& opt) {
    const std::size_t n = m.rows.size();
    if (m.labels.size() != n) throw Error("matrix labels out of sync");
    for (std::size_t i = 0; i < n; ++i)
        if (m.labels[i].empty())
            throw InputError("row " + std::to_string(i) + " is unlabeled; evaluation needs labels");
    if (opt.task == Task::Classify && opt.metric != Metric::Accuracy)
        throw InputError("classification reports accuracy");
    if (opt.task == Task::Regress && opt.metric == Metric::Accuracy)
        throw InputError("regression reports corr or mse");
    opt.svm.validate();

    std::vector<double> targets;
    if (opt.task == Task::Regress) {
        targets.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            targets.push_back(parse_double(m.labels[i], "label of row " + std::to_string(i)));
    }

    std::vector<int> fold;
    if (opt.task == Task::Classify) {
        std::map<std::string, std::size_t> class_sizes;
        for (const std::string& l : m.labels) ++class_sizes[l];
        bool stratify = true;
        for (const auto& [cls, sz] : class_sizes)
            if (sz < static_cast<std::size_t>(opt.k)) stratify = false;
        fold = stratify ? make_stratified_folds(m.labels, opt.k, opt.seed)
                        : make_folds(n, opt.k, opt.seed);
    } else {
        fold = make_folds(n, opt.k, opt.seed);
    }

    WeightedMatrix whole_fit;
    if (opt.norm == NormMode::WholeMatrixFit) whole_fit = normalize(m);

    std::vector<double> fold_values;
    fold_values.reserve(opt.k);
    for (int f = 0; f < opt.k; ++f) {
        std::vector<std::size_t> train_ids, test_ids;
        for (std::size_t i = 0; i < n; ++i) (fold[i] == f ? test_ids : train_ids).push_back(i);

        const WeightedMatrix* w = &whole_fit;
        WeightedMatrix fold_norm;
        if (opt.norm == NormMode::TrainFoldFit) {
            WeightedMatrix tf = apply_tfidf(m, fit_tfidf(m, train_ids));
            fold_norm = apply_scaler(tf, fit_scaler(tf, train_ids));
            w = &fold_norm;
        }
        std::vector<Row> xtrain = detail::rows_view(*w, train_ids);
        std::vector<Row> xtest = detail::rows_view(*w, test_ids);

        if (opt.task == Task::Classify) {
            std::vector<std::string> ytrain, ytest, pred;
            for (std::size_t id : train_ids) ytrain.push_back(m.labels[id]);
            for (std::size_t id : test_ids) ytest.push_back(m.labels[id]);
            Model model = train_classifier(xtrain, ytrain, opt.svm);
            pred.reserve(xtest.size());
            for (const Row& x : xtest) pred.push_back(predict_label(model, x));
            fold_values.push_back(accuracy_metric(pred, ytest));
        } else {
            std::vector<double> ytrain, ytest, pred;
            for (std::size_t id : train_ids) ytrain.push_back(targets[id]);
            for (std::size_t id : test_ids) ytest.push_back(targets[id]);
            Model model = train_regressor(xtrain, ytrain, opt.svm);
            pred.reserve(xtest.size());
            for (const Row& x : xtest) pred.push_back(predict_value(model, x));
            fold_values.push_back(opt.metric == Metric::Correlation ? pearson_metric(pred, ytest)
                                                                    : mse_metric(pred, ytest));
        }
    }
    return summarize_folds(opt.metric, std::move(fold_values));
}

}  // namespace bagpack
