#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bagpack/error.hpp"

namespace bagpack {

using Row = std::span<const double>;

struct SvmConfig {
    double cost = 1.0;        // soft-margin C
    double epsilon = 0.2;     // regression tube half-width
    double tolerance = 1e-6;  // KKT tolerance
    long max_passes = 50000;  // iteration budget, in multiples of the variable count

    void validate() const {
        if (cost <= 0) throw InputError("svm cost must be > 0");
        if (epsilon < 0) throw InputError("svm epsilon must be >= 0");
        if (tolerance <= 0) throw InputError("svm tolerance must be > 0");
        if (max_passes <= 0) throw InputError("svm max_passes must be > 0");
    }
};

enum class ModelKind { Classifier, Regressor };

struct Separator {
    std::vector<double> weights;
    double bias = 0.0;
};

// Trained linear model. Binary classifiers and regressors hold a single
// separator; K-class one-vs-rest models hold one per class, in class order.
struct Model {
    ModelKind kind = ModelKind::Classifier;
    std::size_t dim = 0;
    std::vector<std::string> classes;    // empty for regressors
    std::vector<Separator> separators;
};

namespace detail {

inline double dot(Row a, Row b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::vector<std::vector<double>> gram_matrix(const std::vector<Row>& x) {
    const std::size_t m = x.size();
    std::vector<std::vector<double>> k(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) k[i][j] = k[j][i] = dot(x[i], x[j]);
    return k;
}

// Box-and-equality QP in SMO form:
//   min 1/2 b'Qb + p'b   s.t.  y'b = 0,  0 <= b_i <= C
// with Q_ij = y_i y_j K(u_i, u_j) and u_i = i mod m (regression uses 2m
// variables over m points). Maximal-violating-pair selection; gradients are
// maintained incrementally and re-derived exactly before convergence is
// accepted. Deterministic: no randomness, first index wins ties.
struct SmoProblem {
    const std::vector<std::vector<double>>* gram = nullptr;  // m x m kernel values
    std::size_t m = 0;
    std::vector<int> y;      // +1/-1 per variable
    std::vector<double> p;   // linear term per variable
    double cost = 1.0;
    double tol = 1e-6;
    long max_iter = 0;
};

struct SmoSolution {
    std::vector<double> beta;
    std::vector<double> grad;  // exact gradient at exit
    double bhat = 0.0;         // equality-constraint multiplier
    double gap = 0.0;          // final b_lo - b_hi
    long iterations = 0;
};

inline SmoSolution smo_solve(const SmoProblem& prob) {
    const std::size_t n = prob.y.size();
    const std::size_t m = prob.m;
    const auto& K = *prob.gram;
    const double C = prob.cost;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> beta(n, 0.0);
    std::vector<double> G = prob.p;

    auto recompute_grad = [&] {
        // Collapse variables onto underlying points first: coef_u = sum of
        // y_j beta_j over variables j with u_j = u.
        std::vector<double> coef(m, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (beta[j] != 0.0) coef[j % m] += prob.y[j] * beta[j];
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            const auto& krow = K[k % m];
            for (std::size_t u = 0; u < m; ++u) s += coef[u] * krow[u];
            G[k] = prob.p[k] + prob.y[k] * s;
        }
    };

    long iter = 0;
    long since_recompute = 0;
    for (;;) {
        double b_lo = -inf, b_hi = inf;
        std::size_t lo = n, hi = n;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = prob.y[i] > 0 ? G[i] : -G[i];
            const bool in_lower = prob.y[i] > 0 ? beta[i] > 0.0 : beta[i] < C;
            const bool in_upper = prob.y[i] > 0 ? beta[i] < C : beta[i] > 0.0;
            if (in_lower && v > b_lo) {
                b_lo = v;
                lo = i;
            }
            if (in_upper && v < b_hi) {
                b_hi = v;
                hi = i;
            }
        }

        const double gap = (lo == n || hi == n) ? 0.0 : b_lo - b_hi;
        if (gap <= 2.0 * prob.tol) {
            if (since_recompute > 0) {
                recompute_grad();
                since_recompute = 0;
                continue;  // accept convergence only on the exact gradient
            }
            SmoSolution sol;
            sol.beta = std::move(beta);
            sol.grad = std::move(G);
            if (lo != n && hi != n)
                sol.bhat = (b_lo + b_hi) / 2.0;
            else
                sol.bhat = lo != n ? b_lo : (hi != n ? b_hi : 0.0);
            sol.gap = gap;
            sol.iterations = iter;
            return sol;
        }

        if (iter >= prob.max_iter)
            throw Error("svm solver did not reach KKT tolerance within max_passes (gap " +
                        std::to_string(gap) + ")");

        const std::size_t i = lo, j = hi;
        const double kii = K[i % m][i % m], kjj = K[j % m][j % m], kij = K[i % m][j % m];
        const double curvature = kii + kjj - 2.0 * kij;

        // Step along beta_i += y_i t, beta_j -= y_j t; descent takes t < 0.
        const double t_floor_i = prob.y[i] > 0 ? -beta[i] : beta[i] - C;
        const double t_floor_j = prob.y[j] > 0 ? beta[j] - C : -beta[j];
        double t = std::max(t_floor_i, t_floor_j);
        if (curvature > 0) t = std::max(t, -(b_lo - b_hi) / curvature);

        beta[i] = std::clamp(beta[i] + prob.y[i] * t, 0.0, C);
        beta[j] = std::clamp(beta[j] - prob.y[j] * t, 0.0, C);

        const auto& ki = K[i % m];
        const auto& kj = K[j % m];
        for (std::size_t k = 0; k < n; ++k)
            G[k] += prob.y[k] * t * (ki[k % m] - kj[k % m]);

        ++iter;
        if (++since_recompute >= 4096) {
            recompute_grad();
            since_recompute = 0;
        }
    }
}

inline double dual_objective(const SmoSolution& sol, const std::vector<double>& p) {
    double f = 0.0;
    for (std::size_t i = 0; i < sol.beta.size(); ++i)
        f += 0.5 * sol.beta[i] * (sol.grad[i] + p[i]);
    return f;
}

inline void check_rows(const std::vector<Row>& x) {
    if (x.empty()) throw InputError("empty training set");
    for (const Row& r : x)
        if (r.size() != x[0].size()) throw InputError("training rows differ in dimension");
}

}  // namespace detail

struct SvcSolution {
    std::vector<double> alpha;
    std::vector<double> weights;
    double bias = 0.0;
    double kkt_gap = 0.0;
    double dual_objective = 0.0;  // 1/2 a'Qa - sum(a)
    long iterations = 0;
};

// Soft-margin linear C-SVM on labels y in {-1,+1}.
inline SvcSolution solve_svc(const std::vector<Row>& x, const std::vector<int>& y,
                             const SvmConfig& cfg,
                             const std::vector<std::vector<double>>* gram = nullptr) {
    cfg.validate();
    detail::check_rows(x);
    if (y.size() != x.size()) throw InputError("label count does not match row count");
    for (int v : y)
        if (v != 1 && v != -1) throw InputError("svc labels must be +1 or -1");

    std::vector<std::vector<double>> local;
    if (!gram) {
        local = detail::gram_matrix(x);
        gram = &local;
    }
    detail::SmoProblem prob;
    prob.gram = gram;
    prob.m = x.size();
    prob.y = y;
    prob.p.assign(x.size(), -1.0);
    prob.cost = cfg.cost;
    prob.tol = cfg.tolerance;
    prob.max_iter = cfg.max_passes * static_cast<long>(x.size());
    detail::SmoSolution sol = detail::smo_solve(prob);

    SvcSolution out;
    out.weights.assign(x[0].size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sol.beta[i] == 0.0) continue;
        const double c = y[i] * sol.beta[i];
        for (std::size_t d = 0; d < out.weights.size(); ++d) out.weights[d] += c * x[i][d];
    }
    out.bias = -sol.bhat;
    out.kkt_gap = sol.gap;
    out.dual_objective = detail::dual_objective(sol, prob.p);
    out.iterations = sol.iterations;
    out.alpha = std::move(sol.beta);
    return out;
}

struct SvrSolution {
    std::vector<double> coef;  // alpha_plus - alpha_minus per point
    std::vector<double> weights;
    double bias = 0.0;
    double kkt_gap = 0.0;
    double dual_objective = 0.0;
    long iterations = 0;
};

// Linear epsilon-insensitive SVR via the 2m-variable SMO form.
inline SvrSolution solve_svr(const std::vector<Row>& x, const std::vector<double>& y,
                             const SvmConfig& cfg,
                             const std::vector<std::vector<double>>* gram = nullptr) {
    cfg.validate();
    detail::check_rows(x);
    if (y.size() != x.size()) throw InputError("target count does not match row count");

    const std::size_t m = x.size();
    std::vector<std::vector<double>> local;
    if (!gram) {
        local = detail::gram_matrix(x);
        gram = &local;
    }
    detail::SmoProblem prob;
    prob.gram = gram;
    prob.m = m;
    prob.y.assign(2 * m, 1);
    prob.p.assign(2 * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        prob.p[i] = cfg.epsilon - y[i];
        prob.y[m + i] = -1;
        prob.p[m + i] = cfg.epsilon + y[i];
    }
    prob.cost = cfg.cost;
    prob.tol = cfg.tolerance;
    prob.max_iter = cfg.max_passes * static_cast<long>(2 * m);
    detail::SmoSolution sol = detail::smo_solve(prob);

    SvrSolution out;
    out.coef.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.coef[i] = sol.beta[i] - sol.beta[m + i];
    out.weights.assign(x[0].size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (out.coef[i] == 0.0) continue;
        for (std::size_t d = 0; d < out.weights.size(); ++d)
            out.weights[d] += out.coef[i] * x[i][d];
    }
    out.bias = -sol.bhat;
    out.kkt_gap = sol.gap;
    out.dual_objective = detail::dual_objective(sol, prob.p);
    out.iterations = sol.iterations;
    return out;
}

// Lexicographically ordered distinct labels; the ordering fixes tie-breaks
// and the layout of one-vs-rest separators.
inline std::vector<std::string> class_list(const std::vector<std::string>& y) {
    std::set<std::string> s(y.begin(), y.end());
    return std::vector<std::string>(s.begin(), s.end());
}

inline Model train_classifier(const std::vector<Row>& x, const std::vector<std::string>& y,
                              const SvmConfig& cfg) {
    cfg.validate();
    detail::check_rows(x);
    if (y.size() != x.size()) throw InputError("label count does not match row count");
    std::vector<std::string> classes = class_list(y);
    if (classes.size() < 2)
        throw InputError("degenerate labels: need >= 2 distinct classes, got " +
                         std::to_string(classes.size()));

    Model model;
    model.kind = ModelKind::Classifier;
    model.dim = x[0].size();
    model.classes = classes;

    const auto gram = detail::gram_matrix(x);
    std::vector<int> ybin(x.size());
    if (classes.size() == 2) {
        for (std::size_t i = 0; i < y.size(); ++i) ybin[i] = y[i] == classes[0] ? 1 : -1;
        SvcSolution sol = solve_svc(x, ybin, cfg, &gram);
        model.separators.push_back({std::move(sol.weights), sol.bias});
        return model;
    }
    for (const std::string& cls : classes) {
        for (std::size_t i = 0; i < y.size(); ++i) ybin[i] = y[i] == cls ? 1 : -1;
        SvcSolution sol = solve_svc(x, ybin, cfg, &gram);
        model.separators.push_back({std::move(sol.weights), sol.bias});
    }
    return model;
}

inline Model train_regressor(const std::vector<Row>& x, const std::vector<double>& y,
                             const SvmConfig& cfg) {
    cfg.validate();
    detail::check_rows(x);
    if (x.size() < 2) throw InputError("regressor needs >= 2 examples");
    if (y.size() != x.size()) throw InputError("target count does not match row count");
    SvrSolution sol = solve_svr(x, y, cfg);
    Model model;
    model.kind = ModelKind::Regressor;
    model.dim = x[0].size();
    model.separators.push_back({std::move(sol.weights), sol.bias});
    return model;
}

namespace detail {

inline void check_dim(const Model& model, Row x) {
    if (x.size() != model.dim)
        throw InputError("dimension mismatch: model expects " + std::to_string(model.dim) +
                         " features, row has " + std::to_string(x.size()));
}

}  // namespace detail

// Per-class decision values. Binary models expose (f, -f).
inline std::vector<double> decision_margins(const Model& model, Row x) {
    if (model.kind != ModelKind::Classifier) throw Error("margins require a classifier");
    detail::check_dim(model, x);
    std::vector<double> m;
    if (model.classes.size() == 2) {
        double f = detail::dot(model.separators[0].weights, x) + model.separators[0].bias;
        m = {f, -f};
    } else {
        m.reserve(model.separators.size());
        for (const Separator& s : model.separators)
            m.push_back(detail::dot(s.weights, x) + s.bias);
    }
    return m;
}

// Highest margin wins; ties go to the earlier class.
inline const std::string& predict_label(const Model& model, Row x) {
    std::vector<double> m = decision_margins(model, x);
    std::size_t best = 0;
    for (std::size_t k = 1; k < m.size(); ++k)
        if (m[k] > m[best]) best = k;
    return model.classes[best];
}

inline double predict_value(const Model& model, Row x) {
    if (model.kind != ModelKind::Regressor) throw Error("predict_value requires a regressor");
    detail::check_dim(model, x);
    return detail::dot(model.separators[0].weights, x) + model.separators[0].bias;
}

}  // namespace bagpack
