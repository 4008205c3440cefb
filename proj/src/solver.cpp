#include "phrasecom/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phrasecom/error.hpp"
#include "phrasecom/measures.hpp"

namespace phrasecom {

namespace {

// Mean thresholds are compared with ">="; this absorbs summation rounding so
// that a set of identical scores selects every member.
constexpr double kTieTolerance = 1e-12;
constexpr double kRelativeGuard = 1e-12;

double relative_change(double now, double before) {
    return std::fabs(now - before) / (std::fabs(before) + kRelativeGuard);
}

bool reaches(double value, double threshold) {
    return value >= threshold - kTieTolerance * std::max(1.0, std::fabs(threshold));
}

double mean_over(std::span<const double> scores, std::span<const PhraseId> members) {
    double sum = 0.0;
    for (auto p : members) sum += scores[p];
    return sum / static_cast<double>(members.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

}  // namespace

double lambda_bound(const SolverConfig& c) {
    return std::min(c.gamma * c.gamma / 4.0, c.alpha * c.gamma * c.delta / (c.alpha + 1.0));
}

ParamCheck validate_params(const SolverConfig& c) {
    if (!(c.alpha > 0)) throw ParameterError("alpha must be positive");
    if (!(c.gamma > 0)) throw ParameterError("gamma must be positive");
    if (!(c.delta > 0)) throw ParameterError("delta must be positive");
    if (!(c.lambda > 0)) throw ParameterError("lambda must be positive, got " + format_double(c.lambda));
    if (!(c.inner_tol > 0) || !(c.outer_tol > 0)) throw ParameterError("tolerances must be positive");
    if (c.max_inner == 0 || c.max_outer == 0) throw ParameterError("iteration caps must be at least 1");

    ParamCheck check;
    check.bound = lambda_bound(c);
    if (c.lambda > check.bound) {
        const std::string msg = "lambda " + format_double(c.lambda) +
                                " exceeds min(gamma^2/4, alpha*gamma*delta/(alpha+1)) = " +
                                format_double(check.bound);
        if (!c.allow_lambda_above_bound || c.lambda > c.gamma * c.gamma / 4.0)
            throw ParameterError(msg);
        check.warning = msg + "; non-negativity of distinct relevance scores is not guaranteed";
    }
    return check;
}

RelevanceState initial_state(std::size_t num_phrases, std::size_t num_docs,
                             std::span<const DocIndex> targets_a,
                             std::span<const DocIndex> targets_b, double delta) {
    RelevanceState s;
    s.f.assign(num_phrases, 0.0);
    s.fp.assign(num_phrases, 0.0);
    s.g.assign(num_docs, 0.0);
    s.gp.assign(num_docs, 0.0);
    s.g0.assign(num_docs, delta);
    s.gp0.assign(num_docs, delta);
    for (auto d : targets_a) s.g0.at(d) = 1.0 + delta;
    for (auto d : targets_b) s.gp0.at(d) = 1.0 + delta;
    return s;
}

double common_f_update(double propagated, double other, double lambda, bool selected) {
    if (!selected || other <= 0 || lambda == 0) return propagated;
    // s/2 - c + sqrt((s/2 + c)^2 + lambda) with c = 1/(2 f'), rewritten
    // without the cancellation between -c and the root for small f'.
    const double a = propagated / 2.0;
    const double c = 1.0 / (2.0 * other);
    const double root = std::sqrt((a + c) * (a + c) + lambda);
    return a + (a * a + 2.0 * a * c + lambda) / (root + c);
}

double distinct_f_update(double propagated, double gamma, double lambda, int selection_difference) {
    if (selection_difference == 0 || lambda == 0) return propagated;
    const double shift = lambda * selection_difference;
    const double half_sum = (gamma + propagated) / 2.0;
    const double radicand = half_sum * half_sum + shift;
    if (radicand < 0)
        throw ParameterError("negative radicand in distinct update; lambda violates gamma^2/4 bound");
    const double root = std::sqrt(radicand);
    const double half_diff = (gamma - propagated) / 2.0;
    double value;
    if (half_diff > 0) {
        // root - half_diff == (gamma s + shift) / (root + half_diff)
        value = (gamma * propagated + shift) / (root + half_diff);
    } else {
        value = root - half_diff;
    }
    return std::max(0.0, value);
}

double g_update(double back_propagated, double alpha, double prior) {
    return (back_propagated + alpha * prior) / (1.0 + alpha);
}

double additive_common_f_update(double propagated, double lambda, bool selected) {
    return selected ? propagated + lambda : propagated;
}

double additive_distinct_f_update(double propagated, double lambda, int selection_difference) {
    return std::max(0.0, propagated + lambda * selection_difference);
}

double propagation_loss(const SparseMatrix& adjacency, std::span<const double> f,
                        std::span<const double> g, std::span<const double> g0, double alpha) {
    std::vector<double> sg(adjacency.rows());
    adjacency.multiply(g, sg);
    double supervision = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) supervision += (g[j] - g0[j]) * (g[j] - g0[j]);
    return dot(f, f) + dot(g, g) - 2.0 * dot(f, sg) + alpha * supervision;
}

std::vector<double> commonality_scores(std::span<const double> f, std::span<const double> fp,
                                       MeasureKind kind) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = kind == MeasureKind::log_ratio ? commonality({f[i], fp[i]})
                                                : alt_commonality_sum({f[i], fp[i]});
    return out;
}

std::vector<double> distinction_scores(std::span<const double> own, std::span<const double> other,
                                       double gamma, MeasureKind kind) {
    std::vector<double> out(own.size());
    for (std::size_t i = 0; i < own.size(); ++i)
        out[i] = kind == MeasureKind::log_ratio ? distinction({own[i], other[i]}, gamma)
                                                : alt_distinction_diff({own[i], other[i]});
    return out;
}

double common_objective(const SparseMatrix& adjacency, const RelevanceState& s,
                        std::span<const std::uint8_t> common, double lambda, double alpha,
                        MeasureKind kind) {
    const auto phi = commonality_scores(s.f, s.fp, kind);
    double selected = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (common[i]) selected += phi[i];
    return -lambda * selected + 0.5 * propagation_loss(adjacency, s.f, s.g, s.g0, alpha) +
           0.5 * propagation_loss(adjacency, s.fp, s.gp, s.gp0, alpha);
}

double distinct_objective(const SparseMatrix& adjacency, const RelevanceState& s,
                          std::span<const std::uint8_t> distinct_a,
                          std::span<const std::uint8_t> distinct_b, double lambda, double alpha,
                          double gamma, MeasureKind kind) {
    const auto pi_a = distinction_scores(s.f, s.fp, gamma, kind);
    const auto pi_b = distinction_scores(s.fp, s.f, gamma, kind);
    double selected = 0.0;
    for (std::size_t i = 0; i < pi_a.size(); ++i) {
        if (distinct_a[i]) selected += pi_a[i];
        if (distinct_b[i]) selected += pi_b[i];
    }
    return -lambda * selected + 0.5 * propagation_loss(adjacency, s.f, s.g, s.g0, alpha) +
           0.5 * propagation_loss(adjacency, s.fp, s.gp, s.gp0, alpha);
}

std::vector<std::uint8_t> update_common_indicator(std::span<const double> phi,
                                                  std::span<const PhraseId> salient_a,
                                                  std::span<const PhraseId> salient_b) {
    if (salient_a.empty() || salient_b.empty())
        throw Error("common indicator needs non-empty salient sets on both sides");
    const double mean_a = mean_over(phi, salient_a);
    const double mean_b = mean_over(phi, salient_b);
    std::vector<std::uint8_t> y(phi.size(), 0);
    auto consider = [&](PhraseId p) {
        if (reaches(phi[p], mean_a) && reaches(phi[p], mean_b)) y[p] = 1;
    };
    for (auto p : salient_a) consider(p);
    for (auto p : salient_b) consider(p);
    return y;
}

DistinctIndicators update_distinct_indicator(std::span<const double> pi_a,
                                             std::span<const double> pi_b,
                                             std::span<const PhraseId> salient_a,
                                             std::span<const PhraseId> salient_b,
                                             std::span<const std::uint8_t> common) {
    if (salient_a.empty() || salient_b.empty())
        throw Error("distinct indicator needs non-empty salient sets on both sides");
    DistinctIndicators out;
    out.y.assign(pi_a.size(), 0);
    out.yp.assign(pi_b.size(), 0);
    auto fill = [&](std::span<const double> pi, std::span<const PhraseId> members,
                    std::vector<std::uint8_t>& y) {
        const double mean = mean_over(pi, members);
        bool any_positive = false;
        for (auto p : members) {
            if (pi[p] > 0) any_positive = true;
            // Non-positive scores never lower the objective, so they stay out.
            if (!common[p] && pi[p] > 0 && reaches(pi[p], mean)) y[p] = 1;
        }
        if (!any_positive) out.degenerate = true;
    };
    fill(pi_a, salient_a, out.y);
    fill(pi_b, salient_b, out.yp);
    return out;
}

namespace {

struct Workspace {
    std::vector<double> row;  // length m
    std::vector<double> col;  // length n
};

// One side of one sweep: f <- rule(S g), then g <- (S^T f + alpha g0)/(1+alpha).
template <typename Rule>
void sweep_side(const SparseMatrix& adjacency, std::vector<double>& f, std::vector<double>& g,
                const std::vector<double>& g0, double alpha, Workspace& ws, Rule&& rule) {
    adjacency.multiply(g, ws.row);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = rule(i, ws.row[i]);
    adjacency.multiply_transpose(f, ws.col);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = g_update(ws.col[j], alpha, g0[j]);
}

template <typename SweepFn>
PropagationResult propagate(const SparseMatrix& adjacency, RelevanceState& s,
                            const SolverConfig& config, std::uint64_t* operations,
                            SweepFn&& sweep) {
    double loss_a = propagation_loss(adjacency, s.f, s.g, s.g0, config.alpha);
    double loss_b = propagation_loss(adjacency, s.fp, s.gp, s.gp0, config.alpha);
    const std::uint64_t per_sweep =
        6 * adjacency.nnz() + 4 * (adjacency.rows() + adjacency.cols());
    PropagationResult out;
    while (out.sweeps < config.max_inner) {
        sweep();
        ++out.sweeps;
        if (operations) *operations += per_sweep;
        const double next_a = propagation_loss(adjacency, s.f, s.g, s.g0, config.alpha);
        const double next_b = propagation_loss(adjacency, s.fp, s.gp, s.gp0, config.alpha);
        const double change = std::max(relative_change(next_a, loss_a), relative_change(next_b, loss_b));
        loss_a = next_a;
        loss_b = next_b;
        if (change < config.inner_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace

PropagationResult propagate_common(const SparseMatrix& adjacency, RelevanceState& s,
                                   std::span<const std::uint8_t> common,
                                   const SolverConfig& config, MeasureKind kind,
                                   std::uint64_t* operations) {
    Workspace ws{std::vector<double>(adjacency.rows()), std::vector<double>(adjacency.cols())};
    const double lambda = config.lambda;
    return propagate(adjacency, s, config, operations, [&] {
        if (kind == MeasureKind::log_ratio) {
            sweep_side(adjacency, s.f, s.g, s.g0, config.alpha, ws, [&](std::size_t i, double sg) {
                return common_f_update(sg, s.fp[i], lambda, common[i] != 0);
            });
            sweep_side(adjacency, s.fp, s.gp, s.gp0, config.alpha, ws, [&](std::size_t i, double sg) {
                return common_f_update(sg, s.f[i], lambda, common[i] != 0);
            });
        } else {
            sweep_side(adjacency, s.f, s.g, s.g0, config.alpha, ws, [&](std::size_t i, double sg) {
                return additive_common_f_update(sg, lambda, common[i] != 0);
            });
            sweep_side(adjacency, s.fp, s.gp, s.gp0, config.alpha, ws, [&](std::size_t i, double sg) {
                return additive_common_f_update(sg, lambda, common[i] != 0);
            });
        }
    });
}

PropagationResult propagate_distinct(const SparseMatrix& adjacency, RelevanceState& s,
                                     std::span<const std::uint8_t> y,
                                     std::span<const std::uint8_t> yp, const SolverConfig& config,
                                     MeasureKind kind, std::uint64_t* operations) {
    Workspace ws{std::vector<double>(adjacency.rows()), std::vector<double>(adjacency.cols())};
    const double lambda = config.lambda;
    const double gamma = config.gamma;
    auto diff = [&](std::size_t i) { return static_cast<int>(y[i]) - static_cast<int>(yp[i]); };
    return propagate(adjacency, s, config, operations, [&] {
        if (kind == MeasureKind::log_ratio) {
            sweep_side(adjacency, s.f, s.g, s.g0, config.alpha, ws, [&](std::size_t i, double sg) {
                return distinct_f_update(sg, gamma, lambda, diff(i));
            });
            sweep_side(adjacency, s.fp, s.gp, s.gp0, config.alpha, ws, [&](std::size_t i, double sg) {
                return distinct_f_update(sg, gamma, lambda, -diff(i));
            });
        } else {
            sweep_side(adjacency, s.f, s.g, s.g0, config.alpha, ws, [&](std::size_t i, double sg) {
                return additive_distinct_f_update(sg, lambda, diff(i));
            });
            sweep_side(adjacency, s.fp, s.gp, s.gp0, config.alpha, ws, [&](std::size_t i, double sg) {
                return additive_distinct_f_update(sg, lambda, -diff(i));
            });
        }
    });
}

namespace {

void check_problem(const SelectionProblem& problem) {
    if (!problem.adjacency) throw Error("selection problem without adjacency matrix");
    if (problem.salient_a.empty() || problem.salient_b.empty())
        throw Error("selection problem needs non-empty salient sets on both sides");
}

}  // namespace

CommonSolution solve_common(const SelectionProblem& problem, const SolverConfig& config,
                            MeasureKind kind) {
    check_problem(problem);
    validate_params(config);
    const auto& S = *problem.adjacency;

    CommonSolution out;
    out.state = initial_state(S.rows(), S.cols(), problem.docs_a, problem.docs_b, config.delta);
    out.indicator.assign(S.rows(), 0);
    out.trace.initial_objective =
        common_objective(S, out.state, out.indicator, config.lambda, config.alpha, kind);

    double previous = out.trace.initial_objective;
    for (std::size_t t = 0; t < config.max_outer; ++t) {
        const auto inner =
            propagate_common(S, out.state, out.indicator, config, kind, &out.trace.operations);
        out.trace.inner_iterations.push_back(inner.sweeps);
        out.trace.inner_converged = out.trace.inner_converged && inner.converged;
        if (t == 0) out.first_state = out.state;

        out.phi = commonality_scores(out.state.f, out.state.fp, kind);
        out.indicator = update_common_indicator(out.phi, problem.salient_a, problem.salient_b);
        const double objective =
            common_objective(S, out.state, out.indicator, config.lambda, config.alpha, kind);
        out.trace.objective.push_back(objective);
        if (relative_change(objective, previous) < config.outer_tol) {
            out.trace.converged = true;
            break;
        }
        previous = objective;
    }
    return out;
}

DistinctSolution solve_distinct(const SelectionProblem& problem,
                                std::span<const std::uint8_t> common, const SolverConfig& config,
                                MeasureKind kind) {
    check_problem(problem);
    validate_params(config);
    const auto& S = *problem.adjacency;

    DistinctSolution out;
    out.state = initial_state(S.rows(), S.cols(), problem.docs_a, problem.docs_b, config.delta);
    out.y.assign(S.rows(), 0);
    out.yp.assign(S.rows(), 0);
    out.trace.initial_objective = distinct_objective(S, out.state, out.y, out.yp, config.lambda,
                                                     config.alpha, config.gamma, kind);

    double previous = out.trace.initial_objective;
    for (std::size_t t = 0; t < config.max_outer; ++t) {
        const auto inner =
            propagate_distinct(S, out.state, out.y, out.yp, config, kind, &out.trace.operations);
        out.trace.inner_iterations.push_back(inner.sweeps);
        out.trace.inner_converged = out.trace.inner_converged && inner.converged;

        out.pi_a = distinction_scores(out.state.f, out.state.fp, config.gamma, kind);
        out.pi_b = distinction_scores(out.state.fp, out.state.f, config.gamma, kind);
        auto indicators =
            update_distinct_indicator(out.pi_a, out.pi_b, problem.salient_a, problem.salient_b, common);
        out.y = std::move(indicators.y);
        out.yp = std::move(indicators.yp);
        out.degenerate = indicators.degenerate;

        const double objective = distinct_objective(S, out.state, out.y, out.yp, config.lambda,
                                                    config.alpha, config.gamma, kind);
        out.trace.objective.push_back(objective);
        if (relative_change(objective, previous) < config.outer_tol) {
            out.trace.converged = true;
            break;
        }
        previous = objective;
    }
    return out;
}

}  // namespace phrasecom
